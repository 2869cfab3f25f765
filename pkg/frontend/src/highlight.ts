import { AnalysisResult } from "./api";

export interface HighlightSegment {
  text: string;
  tokenIndex: number | null; // null for plain (unflagged) stretches
  confidence: number;
}

/**
 * Split the text into plain and flagged segments using the analysis
 * offsets. Segments concatenate back to the exact input text.
 */
export function highlightSegments(text: string, analysis: AnalysisResult | null): HighlightSegment[] {
  if (analysis === null || analysis.flags.length === 0) {
    return text.length > 0 ? [{ text, tokenIndex: null, confidence: 0 }] : [];
  }
  const byIndex = new Map(analysis.flags.map((f) => [f.token_index, f.confidence]));
  const segments: HighlightSegment[] = [];
  let cursor = 0;
  analysis.tokens.forEach((token, index) => {
    const confidence = byIndex.get(index);
    if (confidence === undefined) {
      return;
    }
    if (token.start > cursor) {
      segments.push({ text: text.slice(cursor, token.start), tokenIndex: null, confidence: 0 });
    }
    segments.push({ text: text.slice(token.start, token.end), tokenIndex: index, confidence });
    cursor = token.end;
  });
  if (cursor < text.length) {
    segments.push({ text: text.slice(cursor), tokenIndex: null, confidence: 0 });
  }
  return segments;
}

function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Backdrop HTML mirroring the textarea content, with flagged tokens
 * wrapped in <mark> whose underline opacity scales with confidence.
 */
export function highlightHtml(text: string, analysis: AnalysisResult | null): string {
  return highlightSegments(text, analysis)
    .map((segment) => {
      if (segment.tokenIndex === null) {
        return escapeHtml(segment.text);
      }
      const opacity = Math.min(1, Math.max(0.25, segment.confidence)).toFixed(2);
      return (
        `<mark data-token="${segment.tokenIndex}" ` +
        `style="--flag-opacity:${opacity}">${escapeHtml(segment.text)}</mark>`
      );
    })
    .join("");
}
