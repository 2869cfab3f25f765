import { AnalysisResult, AnalyzeClient, Flag, Suggestion, TokenSpan } from "../src/api";

/** Offset-correct analysis for a text: whitespace tokens, the given words
 * flagged with suggestions. */
export function analysisFor(
  text: string,
  flaggedWords: Record<string, Suggestion[]>,
  confidence = 0.8,
): AnalysisResult {
  const tokens: TokenSpan[] = [];
  const regex = /\S+/g;
  let match: RegExpExecArray | null;
  while ((match = regex.exec(text)) !== null) {
    tokens.push({ text: match[0], start: match.index, end: match.index + match[0].length });
  }
  const flags: Flag[] = [];
  const suggestions: Record<string, Suggestion[]> = {};
  tokens.forEach((token, index) => {
    const ranked = flaggedWords[token.text];
    if (ranked !== undefined) {
      flags.push({ token_index: index, confidence });
      suggestions[String(index)] = ranked;
    }
  });
  return { tokens, flags, suggestions };
}

export interface FakeService {
  client: AnalyzeClient;
  calls: string[];
  inflight: () => number;
  maxInflight: () => number;
}

/**
 * An AnalyzeClient whose transport replays `respond(text)` through a fake
 * fetch, tracking concurrency. Words listed in `academic` are never
 * flagged (mirroring the service's academic gate).
 */
export function fakeService(academic: string[]): FakeService {
  const calls: string[] = [];
  let inflight = 0;
  let maxInflight = 0;
  const academicSet = new Set(academic);

  const respond = (text: string): AnalysisResult => {
    const flagged: Record<string, Suggestion[]> = {};
    for (const raw of text.split(/\s+/)) {
      if (raw === "said" && !academicSet.has(raw)) {
        flagged[raw] = [
          { word: "report", score: 1.2 },
          { word: "state", score: 0.9 },
          { word: "claim", score: 0.7 },
        ];
      }
    }
    return analysisFor(text, flagged);
  };

  const fetchImpl = async (input: string, init?: RequestInit): Promise<Response> => {
    inflight += 1;
    maxInflight = Math.max(maxInflight, inflight);
    try {
      if (input.endsWith("/analyze")) {
        const body = JSON.parse(String(init?.body)) as { text: string };
        calls.push(body.text);
        await Promise.resolve(); // one microtask of latency
        return new Response(JSON.stringify(respond(body.text)), { status: 200 });
      }
      return new Response("{}", { status: 200 });
    } finally {
      inflight -= 1;
    }
  };

  return {
    client: new AnalyzeClient("http://service.test", fetchImpl),
    calls,
    inflight: () => inflight,
    maxInflight: () => maxInflight,
  };
}

/** Let the controller's pending promises settle (Response.json() takes
 * several microtask rounds under fake timers). */
export async function settle(): Promise<void> {
  for (let i = 0; i < 80; i += 1) {
    await Promise.resolve();
  }
}
