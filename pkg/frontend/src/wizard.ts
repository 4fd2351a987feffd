import { ApiError, DiagnosisApi } from './api';
import type { Prompt, SessionEnvelope } from './api';
import { initialState, Store, WizardState } from './state';
import { renderResults } from './results';

export interface WizardOptions {
  baseUrl?: string;
  api?: DiagnosisApi;
  onSession?: (sessionId: string | null) => void;
}

export interface WizardHandle {
  store: Store<WizardState>;
  start(resumeSessionId?: string | null): Promise<void>;
}

const PHASE_TITLES: Record<string, string> = {
  AREA_SELECTION: 'Where is the problem?',
  SYMPTOM_SELECTION: 'Your symptoms',
  LEVEL_QUESTIONS: 'Symptom details',
  HISTORY_QUESTIONS: 'A few history questions',
  COMPLETE: 'Results',
};

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function optionInputs(prompt: Prompt): string {
  const type = prompt.kind === 'SYMPTOM_MULTI' ? 'checkbox' : 'radio';
  return prompt.options
    .map(
      (option) => `
    <label class="wizard-option">
      <input type="${type}" name="choice" value="${escapeHtml(option.option_id)}">
      <span>${escapeHtml(option.label)}</span>
    </label>`,
    )
    .join('\n');
}

export function createWizard(root: HTMLElement, options: WizardOptions = {}): WizardHandle {
  const api = options.api ?? new DiagnosisApi(options.baseUrl ?? '');
  const store = new Store<WizardState>(initialState);

  root.innerHTML = `
    <div class="wizard">
      <div class="wizard-banner" hidden>
        <span class="banner-text"></span>
        <button type="button" class="wizard-retry">Retry</button>
      </div>
      <div class="wizard-body"></div>
    </div>`;
  const banner = root.querySelector('.wizard-banner') as HTMLElement;
  const bannerText = banner.querySelector('.banner-text') as HTMLElement;
  const body = root.querySelector('.wizard-body') as HTMLElement;

  let renderedKey = '';

  function renderKey(state: WizardState): string {
    return JSON.stringify([
      state.sessionId,
      state.phase,
      state.prompts.map((p) => p.prompt_id),
      state.results?.map((r) => r.disease_id) ?? null,
    ]);
  }

  function render(state: WizardState): void {
    banner.hidden = state.error === null;
    bannerText.textContent = state.error ?? '';

    const key = renderKey(state);
    if (key !== renderedKey) {
      renderedKey = key;
      renderBody(state);
    }
    const next = body.querySelector<HTMLButtonElement>('.wizard-next');
    if (next) next.disabled = state.busy;
  }

  function renderBody(state: WizardState): void {
    if (state.phase === null) {
      body.innerHTML = '<p class="wizard-loading">Connecting…</p>';
      return;
    }
    if (state.phase === 'COMPLETE') {
      body.innerHTML = `
        <h2 class="phase-title">${PHASE_TITLES.COMPLETE}</h2>
        <div class="results-view"></div>
        <button type="button" class="wizard-restart">Start over</button>`;
      renderResults(body.querySelector('.results-view') as HTMLElement, state.results ?? []);
      return;
    }
    const prompt = state.prompts[0];
    if (!prompt) {
      body.innerHTML = '<p class="wizard-loading">Loading the next question…</p>';
      return;
    }
    const remaining =
      state.prompts.length > 1
        ? `<p class="wizard-progress">${state.prompts.length} questions left in this step</p>`
        : '';
    const hint =
      prompt.kind === 'SYMPTOM_MULTI'
        ? '<p class="wizard-hint">Tick everything that applies; none is a valid answer.</p>'
        : '';
    body.innerHTML = `
      <h2 class="phase-title">${PHASE_TITLES[state.phase] ?? state.phase}</h2>
      <form class="wizard-form" data-prompt-id="${escapeHtml(prompt.prompt_id)}">
        <p class="prompt-text">${escapeHtml(prompt.text)}</p>
        ${hint}
        <div class="wizard-options">${optionInputs(prompt)}</div>
        <p class="wizard-note" hidden>Pick an answer first.</p>
        ${remaining}
        <button type="submit" class="wizard-next">Continue</button>
      </form>`;
  }

  function readSelection(form: HTMLFormElement, prompt: Prompt): string | string[] | null {
    const checked = Array.from(
      form.querySelectorAll<HTMLInputElement>('input[name="choice"]:checked'),
    ).map((input) => input.value);
    if (prompt.kind === 'SYMPTOM_MULTI') return checked;
    return checked.length === 1 ? checked[0] : null;
  }

  function applyEnvelope(envelope: SessionEnvelope): void {
    store.set({
      sessionId: envelope.session_id,
      phase: envelope.phase,
      prompts: envelope.prompts,
      answers: envelope.answers,
      error: null,
    });
    options.onSession?.(envelope.session_id);
  }

  async function loadResults(sessionId: string): Promise<void> {
    const document = await api.getResults(sessionId);
    store.set({ results: document.results });
  }

  async function startFresh(): Promise<void> {
    store.set({ ...initialState, busy: true });
    try {
      const envelope = await api.createSession();
      applyEnvelope(envelope);
    } catch (error) {
      store.set({ error: describe(error) });
    } finally {
      store.set({ busy: false });
    }
  }

  async function start(resumeSessionId?: string | null): Promise<void> {
    if (!resumeSessionId) {
      await startFresh();
      return;
    }
    store.set({ ...initialState, busy: true });
    try {
      const envelope = await api.getSession(resumeSessionId);
      applyEnvelope(envelope);
      if (envelope.phase === 'COMPLETE') await loadResults(envelope.session_id);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        await startFresh();
        return;
      }
      store.set({ error: describe(error) });
    } finally {
      store.set({ busy: false });
    }
  }

  async function refresh(): Promise<void> {
    const { sessionId } = store.get();
    if (!sessionId) {
      await startFresh();
      return;
    }
    store.set({ busy: true });
    try {
      const envelope = await api.getSession(sessionId);
      applyEnvelope(envelope);
      if (envelope.phase === 'COMPLETE' && store.get().results === null) {
        await loadResults(envelope.session_id);
      }
    } catch (error) {
      store.set({ error: describe(error) });
    } finally {
      store.set({ busy: false });
    }
  }

  async function submitCurrent(form: HTMLFormElement): Promise<void> {
    const state = store.get();
    const prompt = state.prompts[0];
    if (!prompt || !state.sessionId || state.busy) return;

    const note = form.querySelector('.wizard-note') as HTMLElement | null;
    const selection = readSelection(form, prompt);
    if (selection === null) {
      if (note) note.hidden = false;
      return;
    }
    store.set({ busy: true });
    try {
      const envelope = await api.submitAnswer(state.sessionId, prompt.prompt_id, selection);
      applyEnvelope(envelope);
      if (envelope.phase === 'COMPLETE') await loadResults(envelope.session_id);
    } catch (error) {
      if (error instanceof ApiError && error.code === 'STALE_PROMPT') {
        // someone else advanced this session; re-sync with the server
        store.set({ error: 'This question was already answered; refreshed.' });
        await refresh();
      } else {
        store.set({ error: describe(error) });
      }
    } finally {
      store.set({ busy: false });
    }
  }

  function describe(error: unknown): string {
    if (error instanceof ApiError) return `${error.code}: ${error.message}`;
    return error instanceof Error ? error.message : String(error);
  }

  root.addEventListener('submit', (event) => {
    const form = (event.target as HTMLElement).closest('form.wizard-form');
    if (!form) return;
    event.preventDefault();
    void submitCurrent(form as HTMLFormElement);
  });
  root.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    if (target.closest('.wizard-retry')) void refresh();
    if (target.closest('.wizard-restart')) void startFresh();
  });

  store.subscribe(render);
  render(store.get());

  return { store, start };
}
