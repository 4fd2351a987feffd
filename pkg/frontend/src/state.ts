import type { Phase, Prompt, RecordedAnswers, ResultEntry } from './api';

export interface WizardState {
  sessionId: string | null;
  phase: Phase | null;
  prompts: Prompt[];
  answers: RecordedAnswers | null;
  results: ResultEntry[] | null;
  error: string | null;
  busy: boolean;
}

export const initialState: WizardState = {
  sessionId: null,
  phase: null,
  prompts: [],
  answers: null,
  results: null,
  error: null,
  busy: false,
};

type Listener<T> = (state: T) => void;

export class Store<T> {
  private listeners: Listener<T>[] = [];

  constructor(private state: T) {}

  get(): T {
    return this.state;
  }

  set(patch: Partial<T>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener<T>): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
