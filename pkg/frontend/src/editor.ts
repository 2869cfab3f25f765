import { AnalysisResult, AnalyzeClient, Suggestion } from "./api";
import { debounce, Debounced } from "./debounce";

export interface EditorEvents {
  /** Fired whenever text, highlights, or suggestion state change. */
  onRender?: () => void;
  /** Non-blocking notice (service down, stale action, ...). */
  onNotice?: (message: string) => void;
}

interface VersionedResult {
  result: AnalysisResult;
  version: number;
}

const DEBOUNCE_MS = 500;

/**
 * Editor state: the document text, the latest analysis for the current
 * text version, per-token dismissed-suggestion memory, and an undo stack
 * of byte-exact text snapshots.
 *
 * Highlights are only ever derived from an analysis whose version matches
 * the current text version; responses for older versions are discarded.
 */
export class EditorController {
  private text = "";
  private version = 0;
  private last: VersionedResult | null = null;
  private dismissed = new Map<string, Set<string>>();
  private undoStack: string[] = [];
  private inflight = 0;
  private scheduled: Debounced<[]>;

  constructor(
    private client: AnalyzeClient,
    private events: EditorEvents = {},
    private k = 4,
  ) {
    this.scheduled = debounce(() => void this.runAnalysis(), DEBOUNCE_MS);
  }

  getText(): string {
    return this.text;
  }

  getAnalysis(): AnalysisResult | null {
    // stale results are never surfaced
    if (this.last !== null && this.last.version === this.version) {
      return this.last.result;
    }
    return null;
  }

  inflightRequests(): number {
    return this.inflight;
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  /** User typing replaces the whole text and schedules a debounced analysis. */
  setText(text: string): void {
    if (text === this.text) {
      return;
    }
    this.text = text;
    this.version += 1;
    this.scheduled();
    this.events.onRender?.();
  }

  /** Suggestions for a flagged token, minus the ones dismissed for it. */
  suggestionsFor(tokenIndex: number): Suggestion[] {
    const analysis = this.getAnalysis();
    if (analysis === null) {
      return [];
    }
    const ranked = analysis.suggestions[String(tokenIndex)] ?? [];
    const memory = this.dismissed.get(this.tokenKey(tokenIndex));
    if (memory === undefined) {
      return ranked;
    }
    return ranked.filter((s) => !memory.has(s.word));
  }

  /**
   * Replace the token's exact character span with the candidate,
   * preserving all surrounding text, then re-analyze. A stale token index
   * (the text moved on since the analysis) is a no-op with a notice.
   */
  applySuggestion(tokenIndex: number, word: string): boolean {
    const analysis = this.getAnalysis();
    if (analysis === null) {
      this.events.onNotice?.("Analysis is out of date; waiting for a fresh one.");
      return false;
    }
    const token = analysis.tokens[tokenIndex];
    if (token === undefined || this.text.slice(token.start, token.end) !== token.text) {
      this.events.onNotice?.("That suggestion no longer matches the text.");
      return false;
    }
    if (!this.suggestionsFor(tokenIndex).some((s) => s.word === word)) {
      this.events.onNotice?.(`"${word}" is not an available suggestion here.`);
      return false;
    }
    this.undoStack.push(this.text);
    this.text = this.text.slice(0, token.start) + word + this.text.slice(token.end);
    this.version += 1;
    this.scheduled();
    this.scheduled.flush(); // an accepted replacement re-analyzes right away
    this.events.onRender?.();
    return true;
  }

  /** Remove one candidate from this token's dropdown, remembered per token. */
  dismiss(tokenIndex: number, word: string): void {
    const key = this.tokenKey(tokenIndex);
    const memory = this.dismissed.get(key) ?? new Set<string>();
    memory.add(word);
    this.dismissed.set(key, memory);
    this.events.onRender?.();
  }

  /** Restore the previous text snapshot byte for byte. */
  undo(): boolean {
    const previous = this.undoStack.pop();
    if (previous === undefined) {
      return false;
    }
    this.text = previous;
    this.version += 1;
    this.scheduled();
    this.scheduled.flush();
    this.events.onRender?.();
    return true;
  }

  /** Force an immediate analysis (used on load and after apply/undo). */
  analyzeNow(): void {
    this.scheduled();
    this.scheduled.flush();
  }

  private tokenKey(tokenIndex: number): string {
    const analysis = this.getAnalysis();
    const token = analysis?.tokens[tokenIndex];
    return token ? `${token.start}:${token.text}` : `#${tokenIndex}`;
  }

  private async runAnalysis(): Promise<void> {
    const requested = this.version;
    this.inflight += 1;
    try {
      const result = await this.client.analyze(this.text, this.k);
      if (this.version !== requested) {
        return; // stale: the text changed while we were waiting
      }
      this.last = { result, version: requested };
      this.events.onRender?.();
    } catch {
      this.events.onNotice?.("Analysis service unreachable; editing continues.");
    } finally {
      this.inflight -= 1;
    }
  }
}
