/** The three-panel lyric-writing client.
 *
 * Settings (melody upload, title/theme/keyword memo, full-length draft),
 * Ideation (relevant phrases, rhyme lookup, copy-to-memo), and Editing
 * (per-phrase score with syllable boxes under the notes, draft lines
 * with Generate, Fit to Melody candidate lists with playback and
 * selection).
 *
 * Every mutation round-trips through the service; the DOM always
 * re-renders from the latest server snapshot, with pending actions
 * disabling their controls. A stale-version answer reloads the project.
 */

import { ApiClient, ApiError } from "./api";
import { describePlayback, playAudioRef, playClickTrack } from "./audio";
import { renderScoreRow } from "./score";
import {
  ViewState,
  canFitToMelody,
  canSelectCandidate,
  describeError,
  initialState,
  isVersionConflict,
  phraseBusy,
} from "./state";

export class App {
  readonly state: ViewState;
  private readonly inflight = new Set<Promise<void>>();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.state = initialState();
    this.render();
  }

  async init(projectId?: string): Promise<void> {
    this.state.project = projectId
      ? await this.api.getProject(projectId)
      : await this.api.createProject();
    await this.refreshScore();
    this.render();
  }

  /** Resolves once every in-flight action has settled. */
  async idle(): Promise<void> {
    while (this.inflight.size > 0) {
      await Promise.allSettled([...this.inflight]);
    }
  }

  private run(key: string, scope: string, fn: () => Promise<void>): Promise<void> {
    const task = (async () => {
      this.state.pending.add(key);
      this.state.errors.delete(scope);
      this.render();
      try {
        await fn();
      } catch (error) {
        this.state.errors.set(scope, describeError(error));
        if (isVersionConflict(error)) {
          this.state.needsReload = true;
          await this.reload();
        }
      } finally {
        this.state.pending.delete(key);
        this.render();
      }
    })();
    this.inflight.add(task);
    void task.finally(() => this.inflight.delete(task));
    return task;
  }

  private project() {
    const project = this.state.project;
    if (!project) {
      throw new Error("no project loaded");
    }
    return project;
  }

  private async reload(): Promise<void> {
    const id = this.project().id;
    this.state.project = await this.api.getProject(id);
    await this.refreshScore();
  }

  private async refreshScore(): Promise<void> {
    const project = this.state.project;
    this.state.score = project?.has_melody ? await this.api.score(project.id) : null;
  }

  // -- actions -------------------------------------------------------------

  saveSettings(title: string, theme: string, memo: string): Promise<void> {
    return this.run("settings", "settings", async () => {
      const project = this.project();
      const keywords = memo
        .split(/[,\n]/)
        .map((term) => term.trim())
        .filter((term) => term.length > 0);
      this.state.project = await this.api.updateSettings(project.id, {
        version: project.version,
        title: title.trim() ? title.trim() : null,
        theme,
        keywords,
      });
    });
  }

  uploadMelody(data: Uint8Array, format: string): Promise<void> {
    return this.run("upload", "settings", async () => {
      const project = this.project();
      await this.api.uploadMelody(project.id, project.version, data, format);
      this.state.project = await this.api.getProject(project.id);
      await this.refreshScore();
    });
  }

  generateFullDraft(): Promise<void> {
    return this.run("draft-all", "settings", async () => {
      const project = this.project();
      this.state.project = await this.api.generateDrafts(project.id, project.version);
      await this.refreshScore();
    });
  }

  brainstorm(input: string): Promise<void> {
    return this.run("brainstorm", "ideation", async () => {
      const result = await this.api.brainstorm(this.project().id, input || undefined);
      this.state.ideas = result.phrases;
    });
  }

  addKeyword(term: string): Promise<void> {
    return this.run("memo", "ideation", async () => {
      const project = this.project();
      if (project.keywords.includes(term)) {
        return;
      }
      this.state.project = await this.api.updateSettings(project.id, {
        version: project.version,
        keywords: [...project.keywords, term],
      });
    });
  }

  findRhymes(word: string, syllables?: number): Promise<void> {
    return this.run("rhymes", "ideation", async () => {
      const result = await this.api.rhymes(this.project().id, word, syllables);
      this.state.rhymeSuggestions = result.suggestions;
    });
  }

  saveDraft(phrase: number, text: string): Promise<void> {
    return this.run(`draft:${phrase}`, `phrase:${phrase}`, async () => {
      const project = this.project();
      this.state.project = await this.api.setDraft(
        project.id,
        project.version,
        phrase,
        text,
      );
      await this.refreshScore();
    });
  }

  generateLine(phrase: number): Promise<void> {
    return this.run(`generate:${phrase}`, `phrase:${phrase}`, async () => {
      const project = this.project();
      this.state.project = await this.api.generateDraft(
        project.id,
        project.version,
        phrase,
      );
      await this.refreshScore();
    });
  }

  fitToMelody(phrase: number): Promise<void> {
    const allowed = canFitToMelody(this.state, phrase);
    return this.run(`fit:${phrase}`, `phrase:${phrase}`, async () => {
      if (!allowed) {
        throw new Error("write a draft for this line before fitting it");
      }
      const project = this.project();
      this.state.project = await this.api.fit(project.id, project.version, phrase);
    });
  }

  selectCandidate(phrase: number, rank: number): Promise<void> {
    return this.run(`select:${phrase}`, `phrase:${phrase}`, async () => {
      const project = this.project();
      this.state.project = await this.api.select(
        project.id,
        project.version,
        phrase,
        rank,
      );
      this.state.reports.delete(phrase);
      await this.refreshScore();
    });
  }

  applyBoxes(phrase: number, boxes: string[]): Promise<void> {
    return this.run(`boxes:${phrase}`, `phrase:${phrase}`, async () => {
      const project = this.project();
      const result = await this.api.editSyllables(
        project.id,
        project.version,
        phrase,
        boxes,
      );
      this.state.project = result.project;
      this.state.reports.set(phrase, result.report);
      await this.refreshScore();
    });
  }

  playFull(): Promise<void> {
    return this.run("play", "playback", async () => {
      const project = this.project();
      const { audio } = await this.api.synthesize(project.id);
      const notes = this.state.score?.phrases.reduce((n, p) => n + p.note_count, 0) ?? 0;
      this.state.lastPlayback = describePlayback(playAudioRef(audio, notes));
    });
  }

  playPhrase(phrase: number): Promise<void> {
    return this.run(`play:${phrase}`, `phrase:${phrase}`, async () => {
      const project = this.project();
      const { audio } = await this.api.synthesize(project.id, phrase);
      const notes = this.state.score?.phrases[phrase]?.note_count ?? 0;
      this.state.lastPlayback = describePlayback(playAudioRef(audio, notes));
    });
  }

  playCandidate(phrase: number): void {
    const notes = this.state.score?.phrases[phrase]?.note_count ?? 4;
    this.state.lastPlayback = describePlayback(playClickTrack(notes));
    this.render();
  }

  toggleProminence(on: boolean): void {
    this.state.showProminence = on;
    this.render();
  }

  dismissReload(): void {
    this.state.needsReload = false;
    this.render();
  }

  // -- rendering -----------------------------------------------------------

  render(): void {
    this.root.textContent = "";
    const project = this.state.project;
    if (!project) {
      const splash = document.createElement("p");
      splash.dataset.testid = "splash";
      splash.textContent = "Loading project…";
      this.root.append(splash);
      return;
    }
    if (this.state.needsReload) {
      this.root.append(this.renderReloadBanner());
    }
    this.root.append(this.renderSettingsPanel());
    this.root.append(this.renderIdeationPanel());
    if (project.has_melody) {
      this.root.append(this.renderEditingPanel());
    }
    if (this.state.lastPlayback) {
      const status = document.createElement("p");
      status.dataset.testid = "playback-status";
      status.textContent = `Playing: ${this.state.lastPlayback}`;
      this.root.append(status);
    }
  }

  private renderReloadBanner(): HTMLElement {
    const banner = document.createElement("div");
    banner.dataset.testid = "reload-banner";
    banner.setAttribute("role", "status");
    banner.textContent = "This project changed elsewhere; the view was refreshed. ";
    const dismiss = document.createElement("button");
    dismiss.textContent = "OK";
    dismiss.addEventListener("click", () => this.dismissReload());
    banner.append(dismiss);
    return banner;
  }

  private errorRegion(scope: string, testid: string): HTMLElement {
    const region = document.createElement("div");
    region.dataset.testid = testid;
    region.setAttribute("role", "alert");
    region.className = "inline-error";
    region.textContent = this.state.errors.get(scope) ?? "";
    return region;
  }

  private renderSettingsPanel(): HTMLElement {
    const project = this.project();
    const panel = document.createElement("section");
    panel.dataset.testid = "panel-settings";
    const heading = document.createElement("h2");
    heading.textContent = "Settings";
    panel.append(heading);

    const title = document.createElement("input");
    title.dataset.testid = "title-input";
    title.placeholder = "Song title";
    title.value = project.title ?? "";

    const theme = document.createElement("textarea");
    theme.dataset.testid = "theme-input";
    theme.placeholder = "Theme";
    theme.value = project.theme;

    const memo = document.createElement("textarea");
    memo.dataset.testid = "memo-input";
    memo.placeholder = "Keywords / key phrases";
    memo.value = project.keywords.join(", ");

    const save = document.createElement("button");
    save.dataset.testid = "save-settings";
    save.textContent = "Save Settings";
    save.disabled = this.state.pending.has("settings");
    save.addEventListener("click", () => {
      void this.saveSettings(title.value, theme.value, memo.value);
    });

    const file = document.createElement("input");
    file.type = "file";
    file.dataset.testid = "melody-file";
    file.accept = ".musicxml,.xml,.mid,.midi";

    const upload = document.createElement("button");
    upload.dataset.testid = "upload-melody";
    upload.textContent = "Upload Melody";
    upload.disabled = this.state.pending.has("upload");
    upload.addEventListener("click", () => {
      const chosen = file.files?.[0];
      if (!chosen) {
        this.state.errors.set("settings", "choose a melody file first");
        this.render();
        return;
      }
      const format = chosen.name.toLowerCase().endsWith("mid") ? "midi" : "musicxml";
      void chosen
        .arrayBuffer()
        .then((buffer) => this.uploadMelody(new Uint8Array(buffer), format));
    });

    const fullDraft = document.createElement("button");
    fullDraft.dataset.testid = "generate-full-draft";
    fullDraft.textContent = "Generate Full-length Draft";
    fullDraft.disabled = !project.has_melody || this.state.pending.has("draft-all");
    fullDraft.addEventListener("click", () => void this.generateFullDraft());

    const melodyNote = document.createElement("p");
    melodyNote.dataset.testid = "melody-summary";
    melodyNote.textContent = project.has_melody
      ? `${project.melody_title ?? "Melody"} — ${project.phrases.length} phrases`
      : "No melody uploaded yet";

    panel.append(
      title,
      theme,
      memo,
      save,
      file,
      upload,
      fullDraft,
      melodyNote,
      this.errorRegion("settings", "error-settings"),
    );
    return panel;
  }

  private renderIdeationPanel(): HTMLElement {
    const panel = document.createElement("section");
    panel.dataset.testid = "panel-ideation";
    const heading = document.createElement("h2");
    heading.textContent = "Ideation";
    panel.append(heading);

    const seed = document.createElement("input");
    seed.dataset.testid = "brainstorm-input";
    seed.placeholder = "A feeling, an image, a line…";

    const go = document.createElement("button");
    go.dataset.testid = "get-relevant-phrases";
    go.textContent = "Get Relevant Phrases";
    go.disabled = this.state.pending.has("brainstorm");
    go.addEventListener("click", () => void this.brainstorm(seed.value));

    const chips = document.createElement("ul");
    chips.dataset.testid = "idea-chips";
    for (const idea of this.state.ideas) {
      const item = document.createElement("li");
      const chip = document.createElement("button");
      chip.className = "idea-chip";
      chip.textContent = idea;
      chip.title = "Add to keyword memo";
      chip.addEventListener("click", () => void this.addKeyword(idea));
      item.append(chip);
      chips.append(item);
    }

    const rhymeWord = document.createElement("input");
    rhymeWord.dataset.testid = "rhyme-word";
    rhymeWord.placeholder = "Rhyme with…";

    const rhymeSyllables = document.createElement("select");
    rhymeSyllables.dataset.testid = "rhyme-syllables";
    const anyOption = document.createElement("option");
    anyOption.value = "";
    anyOption.textContent = "any length";
    rhymeSyllables.append(anyOption);
    for (let n = 1; n <= 9; n++) {
      const option = document.createElement("option");
      option.value = String(n);
      option.textContent = `${n} syllable${n > 1 ? "s" : ""}`;
      rhymeSyllables.append(option);
    }

    const findRhymes = document.createElement("button");
    findRhymes.dataset.testid = "get-rhymes";
    findRhymes.textContent = "Find Rhymes";
    findRhymes.disabled = this.state.pending.has("rhymes");
    findRhymes.addEventListener("click", () => {
      const syllables = rhymeSyllables.value ? Number(rhymeSyllables.value) : undefined;
      void this.findRhymes(rhymeWord.value, syllables);
    });

    const rhymeList = document.createElement("ul");
    rhymeList.dataset.testid = "rhyme-list";
    for (const suggestion of this.state.rhymeSuggestions) {
      const item = document.createElement("li");
      const chip = document.createElement("button");
      chip.className = "rhyme-chip";
      chip.textContent = suggestion;
      chip.title = "Add to keyword memo";
      chip.addEventListener("click", () => void this.addKeyword(suggestion));
      item.append(chip);
      rhymeList.append(item);
    }

    panel.append(
      seed,
      go,
      chips,
      rhymeWord,
      rhymeSyllables,
      findRhymes,
      rhymeList,
      this.errorRegion("ideation", "error-ideation"),
    );
    return panel;
  }

  private renderEditingPanel(): HTMLElement {
    const project = this.project();
    const panel = document.createElement("section");
    panel.dataset.testid = "panel-editing";
    const heading = document.createElement("h2");
    heading.textContent = "Editing";
    panel.append(heading);

    const overlay = document.createElement("label");
    const toggle = document.createElement("input");
    toggle.type = "checkbox";
    toggle.dataset.testid = "prominence-toggle";
    toggle.checked = this.state.showProminence;
    toggle.addEventListener("change", () => this.toggleProminence(toggle.checked));
    overlay.append(toggle, document.createTextNode(" highlight prominent notes"));

    const playAll = document.createElement("button");
    playAll.dataset.testid = "play-full";
    playAll.textContent = "Play Full Song";
    playAll.disabled = this.state.pending.has("play");
    playAll.addEventListener("click", () => void this.playFull());

    panel.append(overlay, playAll, this.errorRegion("playback", "error-playback"));

    for (const phrase of project.phrases) {
      panel.append(this.renderPhraseRow(phrase.index));
    }
    return panel;
  }

  private renderPhraseRow(index: number): HTMLElement {
    const project = this.project();
    const row = document.createElement("article");
    row.dataset.testid = `phrase-row-${index}`;
    row.className = "phrase-row";

    const label = document.createElement("h3");
    label.textContent = `Line ${index + 1}`;
    row.append(label);

    const scorePhrase = this.state.score?.phrases[index];
    if (scorePhrase) {
      row.append(renderScoreRow(scorePhrase, this.state.showProminence));
      row.append(this.renderBoxesRow(index));
    }

    const draft = document.createElement("textarea");
    draft.dataset.testid = `draft-${index}`;
    draft.placeholder = "Draft this line…";
    draft.value = project.drafts[index] ?? "";
    draft.addEventListener("change", () => void this.saveDraft(index, draft.value));

    const generate = document.createElement("button");
    generate.dataset.testid = `generate-line-${index}`;
    generate.textContent = "Generate";
    generate.disabled = phraseBusy(this.state, index);
    generate.addEventListener("click", () => void this.generateLine(index));

    const fit = document.createElement("button");
    fit.dataset.testid = `fit-${index}`;
    fit.textContent = "Fit to Melody";
    fit.disabled = !canFitToMelody(this.state, index);
    if (fit.disabled) {
      fit.title = "Write a draft for this line first";
    }
    fit.addEventListener("click", () => void this.fitToMelody(index));

    const play = document.createElement("button");
    play.dataset.testid = `play-phrase-${index}`;
    play.textContent = "Play";
    play.disabled = phraseBusy(this.state, index);
    play.addEventListener("click", () => void this.playPhrase(index));

    row.append(draft, generate, fit, play);

    const selected = project.selected[index];
    const selectedLine = document.createElement("p");
    selectedLine.dataset.testid = `selected-${index}`;
    selectedLine.textContent = selected ? selected.text : "";
    row.append(selectedLine);

    row.append(this.renderCandidates(index));
    row.append(this.renderReport(index));
    row.append(this.errorRegion(`phrase:${index}`, `error-phrase-${index}`));
    return row;
  }

  private renderBoxesRow(index: number): HTMLElement {
    const scorePhrase = this.state.score?.phrases[index];
    const wrapper = document.createElement("div");
    wrapper.className = "boxes-row";
    wrapper.dataset.testid = `boxes-row-${index}`;
    if (!scorePhrase) {
      return wrapper;
    }
    const inputs: HTMLInputElement[] = [];
    for (const note of scorePhrase.notes) {
      if (note.is_box) {
        const box = document.createElement("input");
        box.className = "syllable-box";
        box.dataset.testid = `box-${index}-${note.position}`;
        box.value = note.lyric;
        inputs.push(box);
        wrapper.append(box);
      } else {
        const hold = document.createElement("span");
        hold.className = "tie-hold";
        hold.textContent = "‿";
        wrapper.append(hold);
      }
    }
    const apply = document.createElement("button");
    apply.dataset.testid = `apply-boxes-${index}`;
    apply.textContent = "Apply Syllables";
    apply.disabled = phraseBusy(this.state, index);
    apply.addEventListener("click", () => {
      void this.applyBoxes(
        index,
        inputs.map((input) => input.value),
      );
    });
    wrapper.append(apply);
    return wrapper;
  }

  private renderCandidates(index: number): HTMLElement {
    const project = this.project();
    const list = document.createElement("ol");
    list.dataset.testid = `candidates-${index}`;
    for (const candidate of project.candidate_sets[index] ?? []) {
      const item = document.createElement("li");
      item.dataset.testid = `candidate-${index}-${candidate.rank}`;

      const text = document.createElement("span");
      text.className = "candidate-text";
      text.textContent = candidate.text;

      const meta = document.createElement("span");
      meta.className = "candidate-meta";
      meta.textContent = ` — keywords ${candidate.keyword_hits}, stress ${candidate.prosody_score}, ${candidate.exact ? "exact" : "short"}`;

      const play = document.createElement("button");
      play.dataset.testid = `play-candidate-${index}-${candidate.rank}`;
      play.textContent = "Play";
      play.addEventListener("click", () => this.playCandidate(index));

      const select = document.createElement("button");
      select.dataset.testid = `select-${index}-${candidate.rank}`;
      select.textContent = "Select";
      select.disabled = !canSelectCandidate(this.state, index);
      select.addEventListener("click", () =>
        void this.selectCandidate(index, candidate.rank),
      );

      item.append(text, meta, play, select);
      list.append(item);
    }
    return list;
  }

  private renderReport(index: number): HTMLElement {
    const region = document.createElement("ul");
    region.dataset.testid = `report-${index}`;
    region.className = "report";
    const report = this.state.reports.get(index);
    if (!report || report.ok) {
      return region;
    }
    for (const issue of report.issues) {
      const item = document.createElement("li");
      const parts = Object.entries(issue.detail)
        .map(([key, value]) => `${key}=${String(value)}`)
        .join(", ");
      item.textContent = `${issue.kind}${parts ? ` (${parts})` : ""}`;
      region.append(item);
    }
    return region;
  }
}
