// Types mirror the analysis service's JSON wire format.

export interface TokenSpan {
  text: string;
  start: number;
  end: number;
}

export interface Flag {
  token_index: number;
  confidence: number;
}

export interface Suggestion {
  word: string;
  score: number;
}

export interface AnalysisResult {
  tokens: TokenSpan[];
  flags: Flag[];
  suggestions: Record<string, Suggestion[]>;
}

export interface ResourceEntry {
  tokens: string;
  n: number;
  acad_rate: number;
  nonacad_rate: number;
  ratio: number | null; // null = infinite (absent from the non-academic corpus)
  sources: string[];
  label: string;
}

export interface LookupResult {
  found: boolean;
  entry: ResourceEntry | null;
}

export interface HealthReport {
  status: string;
  gaps: string[];
  counts: Record<string, number>;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class AnalyzeClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  async analyze(text: string, k = 4): Promise<AnalysisResult> {
    const response = await this.fetchImpl(`${this.baseUrl}/analyze`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, k }),
    });
    if (!response.ok) {
      throw new Error(`analyze failed: HTTP ${response.status}`);
    }
    return (await response.json()) as AnalysisResult;
  }

  async lookup(phrase: string): Promise<LookupResult> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/resource/lookup?phrase=${encodeURIComponent(phrase)}`,
    );
    if (!response.ok) {
      throw new Error(`lookup failed: HTTP ${response.status}`);
    }
    return (await response.json()) as LookupResult;
  }

  async health(): Promise<HealthReport> {
    const response = await this.fetchImpl(`${this.baseUrl}/health`);
    if (!response.ok) {
      throw new Error(`health failed: HTTP ${response.status}`);
    }
    return (await response.json()) as HealthReport;
  }
}
