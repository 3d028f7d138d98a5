// Profile grid model: four dimension rows crossed with the sixteen scenario
// categories. Cells without observations stay null so the view renders them
// empty instead of inventing zero-valued summaries.

import type { ProfileView, SummaryView } from './api.js';

export const DIMENSIONS = [
  'goodwill',
  'self-servingness',
  'pragmatism',
  'legality',
] as const;

const PARAMETERS = ['P1', 'P2', 'P3', 'P4'];

/** All 16 category labels, smallest press sets first: "{}", "{P1}", ... */
export function categoryLabels(): string[] {
  const subsets: string[][] = [[]];
  for (const parameter of PARAMETERS) {
    for (const subset of [...subsets]) {
      subsets.push([...subset, parameter]);
    }
  }
  subsets.sort((a, b) => a.length - b.length || a.join().localeCompare(b.join()));
  return subsets.map((subset) => `{${subset.join(',')}}`);
}

export interface GridCell {
  dimension: string;
  category: string;
  label: string | null;
  dominantPole: string;
  meanGrade: string;
  support: number;
  consistency: string;
}

export type Grid = Array<Array<GridCell | null>>;

function toCell(summary: SummaryView): GridCell {
  return {
    dimension: summary.dimension,
    category: summary.category_label,
    label: summary.label,
    dominantPole: summary.dominant_pole,
    meanGrade: summary.mean_grade.exact,
    support: summary.support,
    consistency: summary.consistency.exact,
  };
}

export function buildGrid(profile: ProfileView): Grid {
  const columns = categoryLabels();
  const bySlot = new Map<string, GridCell>();
  for (const summary of profile.summaries) {
    bySlot.set(`${summary.dimension}|${summary.category_label}`, toCell(summary));
  }
  return DIMENSIONS.map((dimension) =>
    columns.map((category) => bySlot.get(`${dimension}|${category}`) ?? null),
  );
}

export function populatedCells(grid: Grid): GridCell[] {
  const cells: GridCell[] = [];
  for (const row of grid) {
    for (const cell of row) {
      if (cell) cells.push(cell);
    }
  }
  return cells;
}
