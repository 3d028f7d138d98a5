// Wizard state machine, kept pure so a failed request can never eat the
// subject's slider positions: every transition returns a new state and the
// DOM layer just renders whatever it is given.

import {
  ApiError,
  type DispositionView,
  type FeedbackBody,
  type FeedbackResult,
  type ScenarioView,
  type SessionView,
  type VerdictView,
  toFieldErrors,
} from './api.js';

export const PARAMETERS = ['P1', 'P2', 'P3', 'P4'] as const;
export type Parameter = (typeof PARAMETERS)[number];

export type SliderValues = Record<Parameter, number>;

// 3 is the neutral midpoint, so the default never leans toward a band.
export function defaultSliders(): SliderValues {
  return { P1: 3, P2: 3, P3: 3, P4: 3 };
}

export interface WizardState {
  session: string;
  agent: string;
  cursor: number;
  total: number;
  done: boolean;
  scenario: ScenarioView | null;
  response: 'yes' | 'no' | null;
  sliders: SliderValues;
  lastVerdict: VerdictView | null;
  lastDispositions: DispositionView[];
  fieldErrors: Record<string, string>;
  requestError: string | null;
}

export function startWizard(view: SessionView): WizardState {
  return {
    session: view.session,
    agent: view.agent,
    cursor: view.cursor,
    total: view.total,
    done: view.done,
    scenario: view.next,
    response: null,
    sliders: defaultSliders(),
    lastVerdict: null,
    lastDispositions: [],
    fieldErrors: {},
    requestError: null,
  };
}

export function selectResponse(state: WizardState, response: 'yes' | 'no'): WizardState {
  return { ...state, response, fieldErrors: {}, requestError: null };
}

export function setSlider(state: WizardState, parameter: Parameter, value: number): WizardState {
  const clamped = Math.min(5, Math.max(1, Math.round(value)));
  return { ...state, sliders: { ...state.sliders, [parameter]: clamped } };
}

// Submit stays disabled until the subject has actually picked yes or no.
export function canSubmit(state: WizardState): boolean {
  return state.scenario !== null && state.response !== null && !state.done;
}

export function feedbackBody(state: WizardState): FeedbackBody {
  if (!canSubmit(state) || !state.scenario || !state.response) {
    throw new Error('nothing to submit: pick a response first');
  }
  return {
    scenario: state.scenario.id,
    response: state.response,
    justification: { ...state.sliders },
  };
}

/** Fold a successful submission in: show the verdict, advance, reset controls. */
export function applyResult(state: WizardState, result: FeedbackResult): WizardState {
  return {
    ...state,
    cursor: result.cursor,
    total: result.total,
    done: result.done,
    scenario: result.next,
    response: null,
    sliders: defaultSliders(),
    lastVerdict: result.verdict,
    lastDispositions: result.dispositions,
    fieldErrors: {},
    requestError: null,
  };
}

/** Fold a failure in without touching the response or the sliders. */
export function applyFailure(state: WizardState, error: unknown): WizardState {
  if (error instanceof ApiError) {
    return {
      ...state,
      fieldErrors: toFieldErrors(error.violations),
      requestError: error.status >= 500 ? error.message : null,
    };
  }
  const message = error instanceof Error ? error.message : String(error);
  return { ...state, requestError: message };
}

/**
 * One-line banner for the last verdict:
 * elicited labels when sound, a fixed explanation when unsound, and the
 * verdict word itself when indeterminate.
 */
export function verdictBanner(state: WizardState): string | null {
  if (!state.lastVerdict) return null;
  switch (state.lastVerdict.overall) {
    case 'sound':
      if (state.lastDispositions.length === 0) return 'sound';
      return state.lastDispositions.map((d) => d.label).join(', ');
    case 'unsound':
      return 'no disposition elicited (inconsistent justification)';
    case 'indeterminate':
      return 'indeterminate';
  }
}

/** Pressed parameters are only revealed after judging, to avoid priming. */
export function revealedPress(state: WizardState): string[] {
  if (!state.lastVerdict) return [];
  return Object.keys(state.lastVerdict.per_parameter).sort();
}

export function progressLabel(state: WizardState): string {
  if (state.done) return `completed ${state.total} of ${state.total}`;
  return `scenario ${state.cursor + 1} of ${state.total}`;
}
