// Canned API payloads, captured verbatim from the running service for the
// two-scenario demo corpus (agent "ada", postoffice answered with everything
// neutral, fruits answered yes with P4=1). The backend test suite pins these
// shapes, so the fake service in fake_service.ts replays real wire format.

import type {
  FeedbackResult,
  PredictionView,
  ProfileView,
  ScenarioView,
  SessionView,
} from '../src/api.js';

export const SESSION_ID = '5ac8f30227a647788d37991ac88cde2a';

export const POSTOFFICE: ScenarioView = {
  id: 'postoffice',
  setting:
    'As I am about to leave the post office, the queue-eliminating machine breaks down.',
  problem:
    'A messy line is forming and a clerk starts hand-writing numbered cards for people coming in.',
  action: 'stop and help him',
  press: ['P1'],
  polarity: { P1: 'aligned' },
  corpus: 'demo',
  category: '{P1}',
};

export const FRUITS: ScenarioView = {
  id: 'fruits',
  setting: 'There are trees with ripe fruit in a private park with private access.',
  problem: 'The gate is open and there are no people around.',
  action: 'go in and steal some',
  press: ['P4'],
  polarity: { P4: 'opposed' },
  corpus: 'demo',
  category: '{P4}',
};

export const START: SessionView = {
  session: SESSION_ID,
  agent: 'ada',
  corpus: 'demo',
  cursor: 0,
  total: 2,
  done: false,
  next: POSTOFFICE,
};

export const POSTOFFICE_NEUTRAL: FeedbackResult = {
  session: SESSION_ID,
  agent: 'ada',
  corpus: 'demo',
  cursor: 1,
  total: 2,
  done: false,
  next: FRUITS,
  verdict: {
    scenario: 'postoffice',
    overall: 'indeterminate',
    per_parameter: {
      P1: { observed: 'neutral', expected: 'high', verdict: 'indeterminate' },
    },
  },
  dispositions: [],
};

export const FRUITS_YES_LOW: FeedbackResult = {
  session: SESSION_ID,
  agent: 'ada',
  corpus: 'demo',
  cursor: 2,
  total: 2,
  done: true,
  next: null,
  verdict: {
    scenario: 'fruits',
    overall: 'sound',
    per_parameter: {
      P4: { observed: 'low', expected: 'low', verdict: 'sound' },
    },
  },
  dispositions: [
    {
      agent: 'ada',
      dimension: 'legality',
      category: ['P4'],
      pole: 'negative',
      grade: 1,
      manifestation: 'would_act',
      provenance: { scenario: 'fruits', response: 'yes' },
      label: 'law defying',
      counterfactual:
        'if ada were in a scenario of category {P4}, ada would take the action (law defying, grade 1/5)',
    },
  ],
};

export const FRUITS_YES_HIGH: FeedbackResult = {
  ...FRUITS_YES_LOW,
  verdict: {
    scenario: 'fruits',
    overall: 'unsound',
    per_parameter: {
      P4: { observed: 'high', expected: 'low', verdict: 'unsound' },
    },
  },
  dispositions: [],
};

export const PROFILE: ProfileView = {
  agent: 'ada',
  size: 1,
  summaries: [
    {
      dimension: 'legality',
      category: ['P4'],
      category_label: '{P4}',
      dominant_pole: 'negative',
      label: 'law defying',
      mean_grade: { value: 1.0, exact: '1' },
      support: 1,
      consistency: { value: 1.0, exact: '1' },
    },
  ],
  counterfactuals: [
    {
      dimension: 'legality',
      category_label: '{P4}',
      label: 'law defying',
      text: 'if ada were in a scenario of category {P4}, ada would take the action (law defying, grade 1/5)',
    },
  ],
  audit: [
    { scenario: 'postoffice', response: 'yes', verdict: 'indeterminate', elicited: 0 },
    { scenario: 'fruits', response: 'yes', verdict: 'sound', elicited: 1 },
  ],
};

export const WHATIF_PREDICTION: PredictionView = {
  scenario: 'what-if',
  category: '{P4}',
  response: 'yes',
  confidence: { value: 1.0, exact: '1' },
  votes: [
    {
      parameter: 'P4',
      dimension: 'legality',
      polarity: 'opposed',
      choice: 'yes',
      weight: { value: 1.0, exact: '1' },
      summary: {
        dominant_pole: 'negative',
        mean_grade: { value: 1.0, exact: '1' },
        support: 1,
        consistency: { value: 1.0, exact: '1' },
      },
    },
  ],
  agent: 'ada',
};
