import { ApiError, Client } from "./api.js";
import { QueryConsole } from "./state.js";
import { renderHistory, renderOntology, renderState } from "./render.js";

// Wires the console to the page. The API base is the serving origin, so
// the bundle works wherever `ontosearch serve --static-dir` mounts it.

const client = new Client("");
const console_ = new QueryConsole(client);

const form = document.querySelector<HTMLFormElement>("#query-form")!;
const input = document.querySelector<HTMLInputElement>("#query-input")!;
const submit = document.querySelector<HTMLButtonElement>("#query-submit")!;
const output = document.querySelector<HTMLElement>("#output")!;
const historyBox = document.querySelector<HTMLElement>("#history")!;
const ontologyBox = document.querySelector<HTMLElement>("#ontology")!;

function paint(): void {
  output.innerHTML = renderState(console_.view);
  historyBox.innerHTML = renderHistory(console_.history);
  submit.disabled = console_.view.kind === "loading";
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  if (!console_.canSubmit(input.value)) {
    return;
  }
  void console_.submit(input.value).then(paint);
  paint();
});

historyBox.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  if (target.classList.contains("history-item")) {
    input.value = target.textContent ?? "";
    input.focus();
  }
});

async function loadOntology(): Promise<void> {
  try {
    ontologyBox.innerHTML = renderOntology(await client.ontology());
  } catch (err) {
    const message =
      err instanceof ApiError ? err.message : "cannot load the ontology";
    ontologyBox.innerHTML = `<p class="error error-network">${message}</p>`;
  }
}

paint();
void loadOntology();
