// Typed client for the dispositions HTTP/JSON API. The UI never judges
// anything locally; every verdict, disposition, and prediction on screen
// came out of one of these calls.

export interface Violation {
  code: string;
  path: string;
  message: string;
}

export interface ScenarioView {
  id: string;
  setting: string;
  problem: string;
  action: string;
  press: string[];
  polarity: Record<string, string>;
  corpus: string;
  category: string;
}

export interface ExactFraction {
  value: number;
  exact: string;
}

export interface VerdictView {
  scenario: string;
  overall: 'sound' | 'unsound' | 'indeterminate';
  per_parameter: Record<
    string,
    { observed: string; expected: string; verdict: string }
  >;
}

export interface DispositionView {
  agent: string;
  dimension: string;
  category: string[];
  pole: 'positive' | 'negative';
  grade: number;
  manifestation: 'would_act' | 'would_refrain';
  provenance: { scenario: string; response: string };
  label: string;
  counterfactual: string;
}

export interface SessionView {
  session: string;
  agent: string;
  corpus: string;
  cursor: number;
  total: number;
  done: boolean;
  next: ScenarioView | null;
}

export interface FeedbackResult extends SessionView {
  verdict: VerdictView;
  dispositions: DispositionView[];
}

export interface SummaryView {
  dimension: string;
  category: string[];
  category_label: string;
  dominant_pole: 'positive' | 'negative' | 'tied';
  label: string | null;
  mean_grade: ExactFraction;
  support: number;
  consistency: ExactFraction;
}

export interface ProfileView {
  agent: string;
  size: number;
  summaries: SummaryView[];
  counterfactuals: Array<{
    dimension: string;
    category_label: string;
    label: string;
    text: string;
  }>;
  audit: Array<{
    scenario: string;
    response: string;
    verdict: string;
    elicited: number;
  }>;
}

export interface PredictionView {
  scenario: string;
  category: string;
  response: 'yes' | 'no' | 'abstain';
  confidence: ExactFraction;
  votes: Array<{
    parameter: string;
    dimension: string;
    polarity: string;
    choice: string;
    weight: ExactFraction;
    summary: {
      dominant_pole: string;
      mean_grade: ExactFraction;
      support: number;
      consistency: ExactFraction;
    };
  }>;
  agent: string;
}

export interface ScenarioDraft {
  setting: string;
  problem: string;
  action: string;
  press: string[];
  polarity: Record<string, string>;
}

export interface FeedbackBody {
  scenario: string;
  response: 'yes' | 'no';
  justification: Record<string, number>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly violations: Violation[],
  ) {
    super(
      violations.map((v) => (v.path ? `${v.path}: ${v.message}` : v.message)).join('; ') ||
        `request failed with status ${status}`,
    );
    this.name = 'ApiError';
  }
}

/** Violation list -> {path: message} for highlighting form fields. */
export function toFieldErrors(violations: Violation[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const violation of violations) {
    const key = violation.path || '';
    if (!(key in out)) out[key] = violation.message;
  }
  return out;
}

async function parseViolations(response: Response): Promise<Violation[]> {
  try {
    const body = (await response.json()) as { errors?: unknown };
    if (Array.isArray(body.errors)) {
      return body.errors.filter(
        (e): e is Violation =>
          !!e && typeof e === 'object' && typeof (e as Violation).message === 'string',
      );
    }
  } catch {
    // non-JSON error body; fall through to the generic violation
  }
  return [{ code: 'http_error', path: '', message: `HTTP ${response.status}` }];
}

export class Client {
  constructor(private readonly base: string = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await parseViolations(response));
    }
    return (await response.json()) as T;
  }

  startSession(agent: string, corpus?: string): Promise<SessionView> {
    return this.request('POST', '/sessions', corpus ? { agent, corpus } : { agent });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request('GET', `/sessions/${encodeURIComponent(sessionId)}`);
  }

  submitFeedback(sessionId: string, feedback: FeedbackBody): Promise<FeedbackResult> {
    return this.request(
      'POST',
      `/sessions/${encodeURIComponent(sessionId)}/feedback`,
      feedback,
    );
  }

  getProfile(agent: string): Promise<ProfileView> {
    return this.request('GET', `/agents/${encodeURIComponent(agent)}/profile`);
  }

  predict(agent: string, scenario: string | ScenarioDraft): Promise<PredictionView> {
    return this.request('POST', `/agents/${encodeURIComponent(agent)}/predict`, {
      scenario,
    });
  }

  listScenarios(corpus?: string): Promise<{ scenarios: ScenarioView[] }> {
    const query = corpus ? `?corpus=${encodeURIComponent(corpus)}` : '';
    return this.request('GET', `/scenarios${query}`);
  }
}
