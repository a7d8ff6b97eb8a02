/** Typed client for the lyricfit project-service JSON API. */

export interface PhraseOut {
  index: number;
  note_count: number;
  box_count: number;
  start_onset: string;
  end_onset: string;
}

export interface AlignmentOut {
  phrase_index: number;
  exact: boolean;
  syllable_to_note: [[number, number], number][];
}

export interface SelectedOut {
  text: string;
  alignment: AlignmentOut;
}

export interface CandidateOut {
  text: string;
  rank: number;
  keyword_hits: number;
  prosody_score: number;
  exact: boolean;
}

export interface ProjectOut {
  id: string;
  version: number;
  title: string | null;
  theme: string;
  keywords: string[];
  has_melody: boolean;
  melody_title: string | null;
  time_signature: [number, number] | null;
  phrases: PhraseOut[];
  drafts: (string | null)[];
  selected: (SelectedOut | null)[];
  candidate_sets: CandidateOut[][];
}

export interface PhraseListOut {
  id: string;
  version: number;
  phrase_count: number;
  phrases: PhraseOut[];
}

export interface NoteOut {
  position: number;
  pitch: number | null;
  duration: string;
  duration_class: string;
  measure: number;
  prominent: boolean;
  is_box: boolean;
  lyric: string;
}

export interface ScorePhraseOut {
  index: number;
  note_count: number;
  box_count: number;
  draft: string | null;
  selected_text: string | null;
  selected_exact: boolean | null;
  notes: NoteOut[];
}

export interface ScoreOut {
  id: string;
  version: number;
  phrases: ScorePhraseOut[];
}

export interface IssueOut {
  kind: string;
  detail: Record<string, unknown>;
}

export interface ReportOut {
  ok: boolean;
  issues: IssueOut[];
}

export interface EditResultOut {
  project: ProjectOut;
  report: ReportOut;
}

export interface SettingsPatch {
  version: number;
  title?: string | null;
  theme?: string;
  keywords?: string[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    detail: string,
    readonly extras: Record<string, unknown> = {},
  ) {
    super(detail);
    this.name = kind;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    raw?: Uint8Array,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    const init: RequestInit = { method, headers };
    if (raw !== undefined) {
      headers["content-type"] = "application/octet-stream";
      init.body = raw.slice().buffer;
    } else if (body !== undefined) {
      headers["content-type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const { error = "HttpError", detail = response.statusText, ...extras } = payload as {
        error?: string;
        detail?: string;
        [key: string]: unknown;
      };
      throw new ApiError(response.status, String(error), String(detail), extras);
    }
    return payload as T;
  }

  createProject(): Promise<ProjectOut> {
    return this.request("POST", "/projects");
  }

  getProject(id: string): Promise<ProjectOut> {
    return this.request("GET", `/projects/${id}`);
  }

  updateSettings(id: string, patch: SettingsPatch): Promise<ProjectOut> {
    return this.request("PATCH", `/projects/${id}/settings`, patch);
  }

  uploadMelody(
    id: string,
    version: number,
    data: Uint8Array,
    format: string,
  ): Promise<PhraseListOut> {
    return this.request(
      "POST",
      `/projects/${id}/melody?version=${version}&format=${encodeURIComponent(format)}`,
      undefined,
      data,
    );
  }

  brainstorm(id: string, input?: string): Promise<{ phrases: string[] }> {
    return this.request("POST", `/projects/${id}/brainstorm`, { input: input ?? null });
  }

  rhymes(
    id: string,
    word: string,
    syllables?: number,
  ): Promise<{ word: string; suggestions: string[] }> {
    return this.request("POST", `/projects/${id}/rhymes`, {
      word,
      syllables: syllables ?? null,
    });
  }

  generateDrafts(id: string, version: number): Promise<ProjectOut> {
    return this.request("POST", `/projects/${id}/drafts`, { version });
  }

  setDraft(id: string, version: number, phrase: number, text: string): Promise<ProjectOut> {
    return this.request("PUT", `/projects/${id}/drafts/${phrase}`, { version, text });
  }

  generateDraft(id: string, version: number, phrase: number): Promise<ProjectOut> {
    return this.request("POST", `/projects/${id}/drafts/${phrase}/generate`, { version });
  }

  fit(id: string, version: number, phrase: number): Promise<ProjectOut> {
    return this.request("POST", `/projects/${id}/phrases/${phrase}/fit`, { version });
  }

  select(id: string, version: number, phrase: number, rank: number): Promise<ProjectOut> {
    return this.request("POST", `/projects/${id}/phrases/${phrase}/select`, {
      version,
      rank,
    });
  }

  editSyllables(
    id: string,
    version: number,
    phrase: number,
    boxes: string[],
  ): Promise<EditResultOut> {
    return this.request("PUT", `/projects/${id}/phrases/${phrase}/syllables`, {
      version,
      boxes,
    });
  }

  exportAbc(id: string, phraseIndex?: number): Promise<{ abc: string }> {
    const query = phraseIndex === undefined ? "" : `?phrase_index=${phraseIndex}`;
    return this.request("GET", `/projects/${id}/export/abc${query}`);
  }

  synthesize(id: string, phraseIndex?: number): Promise<{ audio: string; cached: boolean }> {
    return this.request("POST", `/projects/${id}/synthesize`, {
      phrase_index: phraseIndex ?? null,
    });
  }

  score(id: string): Promise<ScoreOut> {
    return this.request("GET", `/projects/${id}/score`);
  }
}
