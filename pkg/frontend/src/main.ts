// DOM wiring. All state lives in the pure modules; handlers fold events into
// the state and re-render. The service stays the single source of truth:
// nothing in here computes a verdict, a disposition, or a prediction.

import {
  ApiError,
  Client,
  type PredictionView,
  type ProfileView,
  type ScenarioDraft,
} from './api.js';
import { buildGrid, categoryLabels, DIMENSIONS } from './grid.js';
import {
  applyFailure,
  applyResult,
  canSubmit,
  feedbackBody,
  PARAMETERS,
  progressLabel,
  revealedPress,
  selectResponse,
  setSlider,
  startWizard,
  verdictBanner,
  type Parameter,
  type WizardState,
} from './wizard.js';
import {
  describePrediction,
  emptyDraft,
  setPolarity,
  setText,
  togglePress,
} from './whatif.js';

const SLIDER_TITLES: Record<Parameter, string> = {
  P1: 'P1 goodwill',
  P2: 'P2 self-servingness',
  P3: 'P3 pragmatism',
  P4: 'P4 legality',
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private wizard: WizardState | null = null;
  private draft: ScenarioDraft = emptyDraft();
  private draftErrors: Record<string, string> = {};
  private prediction: PredictionView | null = null;
  private profile: ProfileView | null = null;
  private startError: string | null = null;
  private busy = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
  ) {
    this.render();
  }

  // --- event handlers -----------------------------------------------------

  async start(agent: string): Promise<void> {
    if (!agent.trim()) {
      this.startError = 'enter an agent name';
      this.render();
      return;
    }
    this.busy = true;
    try {
      this.wizard = startWizard(await this.client.startSession(agent.trim()));
      this.startError = null;
    } catch (error) {
      this.startError = error instanceof Error ? error.message : String(error);
    } finally {
      this.busy = false;
    }
    this.render();
  }

  async submit(): Promise<void> {
    if (!this.wizard || !canSubmit(this.wizard) || this.busy) return;
    this.busy = true;
    try {
      const result = await this.client.submitFeedback(
        this.wizard.session,
        feedbackBody(this.wizard),
      );
      this.wizard = applyResult(this.wizard, result);
      if (this.wizard.done) {
        await this.refreshProfile();
      }
    } catch (error) {
      this.wizard = applyFailure(this.wizard, error);
    } finally {
      this.busy = false;
    }
    this.render();
  }

  async refreshProfile(): Promise<void> {
    if (!this.wizard) return;
    try {
      this.profile = await this.client.getProfile(this.wizard.agent);
    } catch (error) {
      // a profile of only unsound feedbacks is never stored as summaries;
      // a 404 here just means nothing recorded yet
      if (!(error instanceof ApiError && error.status === 404)) throw error;
      this.profile = null;
    }
  }

  async runWhatIf(): Promise<void> {
    if (!this.wizard || this.busy) return;
    this.busy = true;
    try {
      this.prediction = await this.client.predict(this.wizard.agent, this.draft);
      this.draftErrors = {};
    } catch (error) {
      this.prediction = null;
      if (error instanceof ApiError) {
        this.draftErrors = {};
        for (const violation of error.violations) {
          this.draftErrors[violation.path] = violation.message;
        }
      }
    } finally {
      this.busy = false;
    }
    this.render();
  }

  // --- rendering ----------------------------------------------------------

  render(): void {
    this.root.replaceChildren();
    if (!this.wizard) {
      this.root.append(this.renderStart());
      return;
    }
    this.root.append(this.renderWizard());
    if (this.wizard.done) {
      this.root.append(this.renderProfile(), this.renderWhatIf());
    }
  }

  private renderStart(): HTMLElement {
    const pane = el('section', { id: 'start' });
    pane.append(el('h1', {}, 'Scenario questionnaire'));
    const input = el('input', { id: 'agent-name', placeholder: 'agent name' });
    const button = el('button', { id: 'start-button' }, 'Start');
    button.addEventListener('click', () => void this.start(input.value));
    pane.append(input, button);
    if (this.startError) {
      pane.append(el('p', { class: 'error', id: 'start-error' }, this.startError));
    }
    return pane;
  }

  private renderWizard(): HTMLElement {
    const state = this.wizard!;
    const pane = el('section', { id: 'wizard' });
    pane.append(el('p', { id: 'progress' }, progressLabel(state)));
    pane.append(this.renderLastVerdict(state));

    const scenario = state.scenario;
    if (!scenario) return pane;

    const card = el('div', { class: 'scenario', id: 'scenario-card' });
    card.append(
      el('p', { class: 'setting' }, scenario.setting),
      el('p', { class: 'problem' }, scenario.problem),
      el('p', { class: 'action' }, `Would you ${scenario.action}?`),
    );
    pane.append(card);

    const form = el('div', { class: 'controls' });
    for (const choice of ['yes', 'no'] as const) {
      const label = el('label', { class: 'choice' });
      const radio = el('input', {
        type: 'radio',
        name: 'response',
        id: `response-${choice}`,
        value: choice,
      });
      (radio as HTMLInputElement).checked = state.response === choice;
      radio.addEventListener('change', () => {
        this.wizard = selectResponse(this.wizard!, choice);
        this.render();
      });
      label.append(radio, el('span', {}, choice));
      form.append(label);
    }

    for (const parameter of PARAMETERS) {
      const row = el('div', { class: 'slider-row' });
      const slider = el('input', {
        type: 'range',
        min: '1',
        max: '5',
        step: '1',
        id: `slider-${parameter}`,
        value: String(state.sliders[parameter]),
      });
      slider.addEventListener('input', () => {
        this.wizard = setSlider(
          this.wizard!,
          parameter,
          Number((slider as HTMLInputElement).value),
        );
        this.render();
      });
      row.append(
        el('label', { for: `slider-${parameter}` }, SLIDER_TITLES[parameter]),
        slider,
        el('output', { id: `value-${parameter}` }, String(state.sliders[parameter])),
      );
      const fieldError = state.fieldErrors[`justification.${parameter}`];
      if (fieldError) {
        row.append(el('span', { class: 'error' }, fieldError));
      }
      form.append(row);
    }

    const submit = el('button', { id: 'submit-button' }, 'Submit');
    (submit as HTMLButtonElement).disabled = !canSubmit(state) || this.busy;
    submit.addEventListener('click', () => void this.submit());
    form.append(submit);

    if (state.requestError) {
      form.append(el('p', { class: 'error', id: 'request-error' }, state.requestError));
    }
    const responseError = state.fieldErrors['response'];
    if (responseError) {
      form.append(el('p', { class: 'error' }, responseError));
    }
    pane.append(form);
    return pane;
  }

  private renderLastVerdict(state: WizardState): HTMLElement {
    const box = el('div', { id: 'verdict-box' });
    const banner = verdictBanner(state);
    if (!banner) return box;
    box.append(
      el(
        'p',
        { id: 'verdict-banner', class: `banner ${state.lastVerdict!.overall}` },
        banner,
      ),
    );
    const pressed = revealedPress(state);
    if (pressed.length > 0) {
      box.append(
        el('p', { class: 'pressed' }, `pressed: ${pressed.join(', ')}`),
      );
    }
    for (const disposition of state.lastDispositions) {
      box.append(el('p', { class: 'counterfactual' }, disposition.counterfactual));
    }
    return box;
  }

  private renderProfile(): HTMLElement {
    const pane = el('section', { id: 'profile' });
    pane.append(el('h2', {}, 'Profile'));
    if (!this.profile) {
      pane.append(el('p', { id: 'profile-empty' }, 'nothing recorded yet'));
      return pane;
    }
    const table = el('table', { id: 'profile-grid' });
    const head = el('tr');
    head.append(el('th', {}, ''));
    for (const category of categoryLabels()) {
      head.append(el('th', {}, category));
    }
    table.append(head);
    const grid = buildGrid(this.profile);
    DIMENSIONS.forEach((dimension, rowIndex) => {
      const row = el('tr');
      row.append(el('th', {}, dimension));
      categoryLabels().forEach((category, columnIndex) => {
        const cell = grid[rowIndex][columnIndex];
        const td = el('td', {
          'data-dimension': dimension,
          'data-category': category,
          class: cell ? 'populated' : 'empty',
        });
        if (cell) {
          td.append(
            el('span', { class: 'pole' }, cell.label ?? 'tied'),
            el(
              'span',
              { class: 'stats' },
              `grade ${cell.meanGrade}, support ${cell.support}, consistency ${cell.consistency}`,
            ),
          );
        }
        row.append(td);
      });
      table.append(row);
    });
    pane.append(table);

    const list = el('ul', { id: 'counterfactuals' });
    for (const entry of this.profile.counterfactuals) {
      list.append(el('li', {}, entry.text));
    }
    pane.append(list);
    return pane;
  }

  private renderWhatIf(): HTMLElement {
    const pane = el('section', { id: 'whatif' });
    pane.append(el('h2', {}, 'What if...'));

    for (const field of ['setting', 'problem', 'action'] as const) {
      const row = el('div', { class: 'field' });
      const input = el('input', { id: `draft-${field}`, placeholder: field });
      (input as HTMLInputElement).value = this.draft[field];
      input.addEventListener('input', () => {
        this.draft = setText(this.draft, field, (input as HTMLInputElement).value);
      });
      row.append(input);
      const error = this.draftErrors[field];
      if (error) row.append(el('span', { class: 'error' }, error));
      pane.append(row);
    }

    for (const parameter of PARAMETERS) {
      const row = el('div', { class: 'press-row' });
      const check = el('input', { type: 'checkbox', id: `press-${parameter}` });
      (check as HTMLInputElement).checked = this.draft.press.includes(parameter);
      check.addEventListener('change', () => {
        this.draft = togglePress(this.draft, parameter);
        this.render();
      });
      row.append(check, el('label', { for: `press-${parameter}` }, parameter));
      if (this.draft.press.includes(parameter)) {
        for (const polarity of ['aligned', 'opposed'] as const) {
          const button = el(
            'button',
            {
              id: `polarity-${parameter}-${polarity}`,
              class: this.draft.polarity[parameter] === polarity ? 'on' : '',
            },
            polarity,
          );
          button.addEventListener('click', () => {
            this.draft = setPolarity(this.draft, parameter, polarity);
            this.render();
          });
          row.append(button);
        }
      }
      const error = this.draftErrors[`polarity.${parameter}`];
      if (error) row.append(el('span', { class: 'error' }, error));
      pane.append(row);
    }

    const run = el('button', { id: 'whatif-button' }, 'Predict');
    run.addEventListener('click', () => void this.runWhatIf());
    pane.append(run);

    const generalError = this.draftErrors[''] ?? this.draftErrors['scenario'];
    if (generalError) {
      pane.append(el('p', { class: 'error', id: 'whatif-error' }, generalError));
    }
    if (this.prediction) {
      pane.append(
        el('p', { id: 'prediction' }, describePrediction(this.prediction)),
      );
    }
    return pane;
  }
}

export function createApp(root: HTMLElement, client: Client = new Client()): App {
  return new App(root, client);
}

declare global {
  interface Window {
    dispositionsApp?: App;
  }
}

// Browser entry point; tests construct the App themselves.
if (typeof document !== 'undefined' && document.getElementById('app')) {
  window.dispositionsApp = createApp(document.getElementById('app')!);
}
