/** Score row rendering: a cell per note with pitch, duration class, and
 * an optional prominence overlay. Alignment editing needs boxes under
 * notes, not engraving, so cells are simple labeled blocks.
 */

import type { ScorePhraseOut } from "./api";

const NOTE_NAMES = [
  "C",
  "C#",
  "D",
  "D#",
  "E",
  "F",
  "F#",
  "G",
  "G#",
  "A",
  "A#",
  "B",
] as const;

export function pitchLabel(pitch: number | null): string {
  if (pitch === null) {
    return "rest";
  }
  const name = NOTE_NAMES[((pitch % 12) + 12) % 12];
  return `${name}${Math.floor(pitch / 12) - 1}`;
}

export function renderScoreRow(
  phrase: ScorePhraseOut,
  showProminence: boolean,
): HTMLElement {
  const row = document.createElement("div");
  row.className = "score-row";
  row.dataset.testid = `score-row-${phrase.index}`;
  for (const note of phrase.notes) {
    const cell = document.createElement("div");
    cell.className = `note-cell duration-${note.duration_class}`;
    if (showProminence && note.prominent) {
      cell.classList.add("prominent");
    }
    cell.dataset.position = String(note.position);
    const head = document.createElement("div");
    head.className = "note-pitch";
    head.textContent = pitchLabel(note.pitch);
    const duration = document.createElement("div");
    duration.className = "note-duration";
    duration.textContent = note.duration_class;
    cell.append(head, duration);
    row.append(cell);
  }
  return row;
}
