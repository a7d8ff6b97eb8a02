/** View state and the pure rules deciding which actions are available.
 *
 * The view renders only server-confirmed state; in-flight mutations are
 * tracked per action key so each phrase has at most one pending change
 * and its buttons disable while it runs.
 */

import { ApiError } from "./api";
import type { ProjectOut, ReportOut, ScoreOut } from "./api";

export interface ViewState {
  project: ProjectOut | null;
  score: ScoreOut | null;
  ideas: string[];
  rhymeSuggestions: string[];
  pending: Set<string>;
  errors: Map<string, string>;
  reports: Map<number, ReportOut>;
  showProminence: boolean;
  needsReload: boolean;
  lastPlayback: string | null;
}

export function initialState(): ViewState {
  return {
    project: null,
    score: null,
    ideas: [],
    rhymeSuggestions: [],
    pending: new Set(),
    errors: new Map(),
    reports: new Map(),
    showProminence: false,
    needsReload: false,
    lastPlayback: null,
  };
}

export function hasDraft(state: ViewState, phrase: number): boolean {
  const draft = state.project?.drafts?.[phrase];
  return typeof draft === "string" && draft.trim().length > 0;
}

/** True while any mutation for this phrase is in flight. */
export function phraseBusy(state: ViewState, phrase: number): boolean {
  for (const key of state.pending) {
    if (key.endsWith(`:${phrase}`)) {
      return true;
    }
  }
  return false;
}

/** Fit to Melody is offered only once the phrase has a draft to fit. */
export function canFitToMelody(state: ViewState, phrase: number): boolean {
  return (
    state.project?.has_melody === true &&
    hasDraft(state, phrase) &&
    !phraseBusy(state, phrase)
  );
}

export function canSelectCandidate(state: ViewState, phrase: number): boolean {
  const candidates = state.project?.candidate_sets?.[phrase] ?? [];
  return candidates.length > 0 && !phraseBusy(state, phrase);
}

export function isVersionConflict(error: unknown): boolean {
  return error instanceof ApiError && error.kind === "VersionConflict";
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return `${error.kind}: ${error.message}`;
  }
  return error instanceof Error ? error.message : String(error);
}

/** Rebuild the lyric line a row of syllable boxes spells out.
 *
 * A box ending in "-" continues its word into the next box; empty boxes
 * contribute nothing.
 */
export function wordsFromBoxes(boxes: string[]): string {
  const words: string[] = [];
  let current = "";
  for (const box of boxes) {
    const piece = box.trim();
    if (!piece) {
      continue;
    }
    if (piece.endsWith("-")) {
      current += piece.slice(0, -1);
    } else {
      words.push(current + piece);
      current = "";
    }
  }
  if (current) {
    words.push(current);
  }
  return words.join(" ");
}
