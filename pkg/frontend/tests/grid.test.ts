import { describe, expect, it } from 'vitest';

import { buildGrid, categoryLabels, DIMENSIONS, populatedCells } from '../src/grid.js';
import { PROFILE } from './fixtures.js';

describe('category labels', () => {
  it('enumerates all 16 press subsets, smallest first', () => {
    const labels = categoryLabels();
    expect(labels).toHaveLength(16);
    expect(new Set(labels).size).toBe(16);
    expect(labels[0]).toBe('{}');
    expect(labels.slice(1, 5)).toEqual(['{P1}', '{P2}', '{P3}', '{P4}']);
    expect(labels[15]).toBe('{P1,P2,P3,P4}');
  });
});

describe('profile grid', () => {
  it('is 4 dimensions by 16 categories', () => {
    const grid = buildGrid(PROFILE);
    expect(grid).toHaveLength(4);
    for (const row of grid) expect(row).toHaveLength(16);
  });

  it('populates exactly the observed cells', () => {
    const cells = populatedCells(buildGrid(PROFILE));
    expect(cells).toHaveLength(1);
    expect(cells[0].dimension).toBe('legality');
    expect(cells[0].category).toBe('{P4}');
    expect(cells[0].label).toBe('law defying');
    expect(cells[0].meanGrade).toBe('1');
    expect(cells[0].support).toBe(1);
  });

  it('renders unobserved cells as empty, never zero-valued', () => {
    const grid = buildGrid(PROFILE);
    const legality = DIMENSIONS.indexOf('legality');
    const p4 = categoryLabels().indexOf('{P4}');
    for (let row = 0; row < grid.length; row += 1) {
      for (let column = 0; column < grid[row].length; column += 1) {
        if (row === legality && column === p4) continue;
        expect(grid[row][column]).toBeNull();
      }
    }
  });

  it('handles an empty profile', () => {
    const empty = { ...PROFILE, summaries: [], counterfactuals: [], audit: [], size: 0 };
    expect(populatedCells(buildGrid(empty))).toHaveLength(0);
  });

  it('labels tied cells as tied rather than picking a pole', () => {
    const tied = {
      ...PROFILE,
      summaries: [
        {
          ...PROFILE.summaries[0],
          dominant_pole: 'tied' as const,
          label: null,
        },
      ],
    };
    const cells = populatedCells(buildGrid(tied));
    expect(cells[0].label).toBeNull();
    expect(cells[0].dominantPole).toBe('tied');
  });
});
