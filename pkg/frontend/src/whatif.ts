// What-if drafts: the user sketches a scenario, the service predicts.
// Drafts are sent as-is; the service's violation paths drive the inline
// field errors, so the form and the API can never disagree about validity.

import type { PredictionView, ScenarioDraft } from './api.js';

export function emptyDraft(): ScenarioDraft {
  return { setting: '', problem: '', action: '', press: [], polarity: {} };
}

export function setText(
  draft: ScenarioDraft,
  field: 'setting' | 'problem' | 'action',
  value: string,
): ScenarioDraft {
  return { ...draft, [field]: value };
}

export function togglePress(draft: ScenarioDraft, parameter: string): ScenarioDraft {
  if (draft.press.includes(parameter)) {
    const polarity = { ...draft.polarity };
    delete polarity[parameter];
    return { ...draft, press: draft.press.filter((p) => p !== parameter), polarity };
  }
  return { ...draft, press: [...draft.press, parameter].sort() };
}

export function setPolarity(
  draft: ScenarioDraft,
  parameter: string,
  polarity: 'aligned' | 'opposed',
): ScenarioDraft {
  return { ...draft, polarity: { ...draft.polarity, [parameter]: polarity } };
}

export function describePrediction(view: PredictionView): string {
  if (view.response === 'abstain') {
    return 'abstain (no applicable dispositions yet)';
  }
  return `${view.response} (confidence ${view.confidence.exact})`;
}
