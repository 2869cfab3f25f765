import { AnalyzeClient } from "./api";
import { EditorController } from "./editor";
import { highlightHtml } from "./highlight";
import "./style.css";

const BASE_URL = import.meta.env.VITE_ACADAID_URL ?? "http://127.0.0.1:8040";

const textarea = document.getElementById("editor") as HTMLTextAreaElement;
const backdrop = document.getElementById("backdrop") as HTMLDivElement;
const dropdown = document.getElementById("suggestions") as HTMLDivElement;
const toast = document.getElementById("toast") as HTMLDivElement;
const undoButton = document.getElementById("undo") as HTMLButtonElement;
const statusLine = document.getElementById("status") as HTMLDivElement;

let toastTimer: ReturnType<typeof setTimeout> | null = null;

function showToast(message: string): void {
  toast.textContent = message;
  toast.classList.add("visible");
  if (toastTimer !== null) {
    clearTimeout(toastTimer);
  }
  toastTimer = setTimeout(() => toast.classList.remove("visible"), 2500);
}

const client = new AnalyzeClient(BASE_URL);
const editor = new EditorController(client, {
  onRender: render,
  onNotice: showToast,
});

let openToken: number | null = null;

function render(): void {
  if (textarea.value !== editor.getText()) {
    textarea.value = editor.getText();
  }
  backdrop.innerHTML = highlightHtml(editor.getText(), editor.getAnalysis()) + "\n";
  undoButton.disabled = !editor.canUndo();
  renderDropdown();
}

function renderDropdown(): void {
  dropdown.innerHTML = "";
  if (openToken === null) {
    dropdown.classList.remove("visible");
    return;
  }
  const ranked = editor.suggestionsFor(openToken);
  const analysis = editor.getAnalysis();
  if (analysis === null || ranked.length === 0) {
    dropdown.classList.remove("visible");
    return;
  }
  for (const suggestion of ranked) {
    const row = document.createElement("div");
    row.className = "suggestion-row";
    const apply = document.createElement("button");
    apply.textContent = suggestion.word;
    apply.title = `score ${suggestion.score.toFixed(3)}`;
    apply.addEventListener("click", () => {
      const token = openToken;
      openToken = null;
      if (token !== null) {
        editor.applySuggestion(token, suggestion.word);
      }
    });
    const dismiss = document.createElement("button");
    dismiss.className = "dismiss";
    dismiss.textContent = "×";
    dismiss.title = "dismiss for this word";
    dismiss.addEventListener("click", () => {
      if (openToken !== null) {
        editor.dismiss(openToken, suggestion.word);
      }
    });
    row.append(apply, dismiss);
    dropdown.append(row);
  }
  dropdown.classList.add("visible");
}

textarea.addEventListener("input", () => {
  openToken = null;
  editor.setText(textarea.value);
});

textarea.addEventListener("scroll", () => {
  backdrop.scrollTop = textarea.scrollTop;
  backdrop.scrollLeft = textarea.scrollLeft;
});

backdrop.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const index = target.dataset.token;
  openToken = index === undefined ? null : Number(index);
  renderDropdown();
});

// clicking a highlighted word in the textarea: find the flagged token
// covering the caret
textarea.addEventListener("click", () => {
  const analysis = editor.getAnalysis();
  if (analysis === null) {
    return;
  }
  const caret = textarea.selectionStart;
  const flagged = new Set(analysis.flags.map((f) => f.token_index));
  openToken = null;
  analysis.tokens.forEach((token, index) => {
    if (flagged.has(index) && token.start <= caret && caret <= token.end) {
      openToken = index;
    }
  });
  renderDropdown();
});

undoButton.addEventListener("click", () => {
  openToken = null;
  editor.undo();
});

client
  .health()
  .then((report) => {
    statusLine.textContent =
      report.status === "ok"
        ? `service ok — ${report.counts.resource_entries} resource entries`
        : `service degraded: ${report.gaps.join(", ")}`;
  })
  .catch(() => {
    statusLine.textContent = "service unreachable";
  });

render();
editor.analyzeNow();
