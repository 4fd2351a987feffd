export type Phase =
  | 'AREA_SELECTION'
  | 'SYMPTOM_SELECTION'
  | 'LEVEL_QUESTIONS'
  | 'HISTORY_QUESTIONS'
  | 'COMPLETE';

export type PromptKind = 'AREA' | 'SYMPTOM_MULTI' | 'LEVEL' | 'HISTORY';

export interface PromptOption {
  option_id: string;
  label: string;
}

export interface Prompt {
  prompt_id: string;
  kind: PromptKind;
  text: string;
  options: PromptOption[];
}

export interface RecordedAnswers {
  selected_symptom_ids: string[];
  level_answers: Record<string, string>;
  catalyst_answers: Record<string, boolean>;
}

export interface SessionEnvelope {
  session_id: string;
  phase: Phase;
  area_id: string | null;
  prompts: Prompt[];
  answers: RecordedAnswers;
  results_url?: string;
}

export interface AreaSummary {
  area_id: string;
  display_name: string;
}

export interface ResultEntry {
  disease_id: string;
  display_name: string;
  final_probability: number;
  label: string;
  memberships: Record<string, number>;
  confidence: number;
  rank: number;
}

export interface ResultsDocument {
  session_id: string;
  results: ResultEntry[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function parseError(response: Response): Promise<never> {
  let code = 'UNKNOWN';
  let message = `request failed with status ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.code === 'string') code = body.code;
    if (body && typeof body.message === 'string') message = body.message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(response.status, code, message);
}

export class DiagnosisApi {
  constructor(readonly baseUrl: string = '') {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await parseError(response);
    return response.json() as Promise<T>;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) await parseError(response);
    return response.json() as Promise<T>;
  }

  listAreas(): Promise<AreaSummary[]> {
    return this.get('/api/v1/areas');
  }

  createSession(): Promise<SessionEnvelope> {
    return this.post('/api/v1/sessions', {});
  }

  getSession(sessionId: string): Promise<SessionEnvelope> {
    return this.get(`/api/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  submitAnswer(
    sessionId: string,
    promptId: string,
    selection: string | string[],
  ): Promise<SessionEnvelope> {
    return this.post(`/api/v1/sessions/${encodeURIComponent(sessionId)}/answers`, {
      prompt_id: promptId,
      selection,
    });
  }

  getResults(sessionId: string): Promise<ResultsDocument> {
    return this.get(`/api/v1/sessions/${encodeURIComponent(sessionId)}/results`);
  }
}
