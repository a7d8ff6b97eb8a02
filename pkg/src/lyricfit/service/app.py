"""HTTP API: resource-oriented JSON routes over the workflow operations."""

from __future__ import annotations

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import errors as E
from .config import ServiceConfig, build_generator, theme_rng
from .schemas import (
    BrainstormIn,
    BrainstormOut,
    DraftIn,
    EditResultOut,
    ExportOut,
    PhraseListOut,
    ProjectListOut,
    ProjectOut,
    RhymeIn,
    RhymeOut,
    ScoreOut,
    SelectIn,
    SettingsIn,
    SyllableBoxesIn,
    SynthesizeIn,
    SynthesizeOut,
    VersionIn,
    phrase_list_out,
    project_out,
    report_out,
)
from .store import ProjectStore
from .synthesis import build_synthesizer
from .workflow import Workflow

_STATUS_BY_ERROR = {
    E.NotFound: 404,
    E.VersionConflict: 409,
    E.ThemeMissing: 409,
    E.MelodyMissing: 409,
    E.DraftMissing: 409,
    E.NothingToExport: 409,
    E.MalformedFile: 422,
    E.UnsupportedContent: 422,
    E.PolyphonyError: 422,
    E.AlignmentError: 422,
    E.TooManySyllables: 422,
    E.NoViableCandidate: 422,
    E.EmptyWord: 422,
    E.EmptyLine: 422,
    E.EmptyText: 422,
    E.NoVowel: 422,
    E.LineCountMismatch: 422,
    E.CountMismatch: 502,
    E.GeneratorUnavailable: 502,
    E.AuthError: 502,
    E.SynthesisUnavailable: 502,
}


def create_app(
    config: ServiceConfig | None = None,
    *,
    store: ProjectStore | None = None,
    generator=None,
    synthesizer=None,
) -> FastAPI:
    config = config or ServiceConfig()
    workflow = Workflow(
        store=store or ProjectStore(config.data_dir),
        generator=generator or build_generator(config.generator),
        synthesizer=synthesizer or build_synthesizer(config.synthesis_endpoint),
        lexicon=None,
        segmentation=config.segmentation,
        rng=theme_rng(config.generator),
    )

    app = FastAPI(title="lyricfit", version="1.0")
    app.state.workflow = workflow
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(E.LyricfitError)
    async def engine_error(request: Request, exc: E.LyricfitError):
        status = _STATUS_BY_ERROR.get(type(exc), 500)
        body = {"error": type(exc).__name__, "detail": str(exc)}
        for key, value in vars(exc).items():
            if isinstance(value, (int, str)) and not key.startswith("_"):
                body[key] = value
        return JSONResponse(status_code=status, content=body)

    @app.get("/health")
    def health():
        return {"status": "ok"}

    # -- lifecycle -------------------------------------------------------

    @app.post("/projects", response_model=ProjectOut, status_code=201)
    def create_project():
        return project_out(workflow.create_project())

    @app.get("/projects", response_model=ProjectListOut)
    def list_projects():
        return ProjectListOut(projects=workflow.list_projects())

    @app.get("/projects/{pid}", response_model=ProjectOut)
    def get_project(pid: str):
        return project_out(workflow.get_project(pid))

    @app.delete("/projects/{pid}", status_code=204)
    def delete_project(pid: str):
        workflow.delete_project(pid)
        return Response(status_code=204)

    @app.patch("/projects/{pid}/settings", response_model=ProjectOut)
    def update_settings(pid: str, body: SettingsIn):
        updates = {
            k: getattr(body, k)
            for k in ("title", "theme", "keywords")
            if k in body.model_fields_set
        }
        return project_out(workflow.update_settings(pid, body.version, **updates))

    # -- melody ----------------------------------------------------------

    @app.post("/projects/{pid}/melody", response_model=PhraseListOut)
    async def upload_melody(
        pid: str,
        request: Request,
        version: int = Query(),
        format: str = Query(pattern="^(musicxml|xml|midi|mid)$"),
    ):
        data = await request.body()
        return phrase_list_out(workflow.upload_melody(pid, version, data, format))

    # -- ideation ----------------------------------------------------------

    @app.post("/projects/{pid}/brainstorm", response_model=BrainstormOut)
    def brainstorm(pid: str, body: BrainstormIn):
        return BrainstormOut(phrases=workflow.brainstorm(pid, body.input))

    @app.post("/projects/{pid}/rhymes", response_model=RhymeOut)
    def rhymes(pid: str, body: RhymeIn):
        return RhymeOut(
            word=body.word,
            suggestions=workflow.rhyme_suggest(pid, body.word, body.syllables),
        )

    # -- drafting ----------------------------------------------------------

    @app.post("/projects/{pid}/drafts", response_model=ProjectOut)
    def generate_all_drafts(pid: str, body: VersionIn):
        return project_out(workflow.generate_draft_all(pid, body.version))

    @app.put("/projects/{pid}/drafts/{phrase_index}", response_model=ProjectOut)
    def set_draft(pid: str, phrase_index: int, body: DraftIn):
        return project_out(
            workflow.set_draft(pid, body.version, phrase_index, body.text)
        )

    @app.post(
        "/projects/{pid}/drafts/{phrase_index}/generate", response_model=ProjectOut
    )
    def generate_one_draft(pid: str, phrase_index: int, body: VersionIn):
        return project_out(
            workflow.generate_draft_single(pid, body.version, phrase_index)
        )

    # -- fitting -----------------------------------------------------------

    @app.post("/projects/{pid}/phrases/{phrase_index}/fit", response_model=ProjectOut)
    def fit(pid: str, phrase_index: int, body: VersionIn):
        return project_out(workflow.fit(pid, body.version, phrase_index))

    @app.post(
        "/projects/{pid}/phrases/{phrase_index}/select", response_model=ProjectOut
    )
    def select(pid: str, phrase_index: int, body: SelectIn):
        return project_out(
            workflow.select(pid, body.version, phrase_index, body.rank)
        )

    @app.put(
        "/projects/{pid}/phrases/{phrase_index}/syllables",
        response_model=EditResultOut,
    )
    def edit_syllables(pid: str, phrase_index: int, body: SyllableBoxesIn):
        project, report = workflow.edit_syllables(
            pid, body.version, phrase_index, body.boxes
        )
        return EditResultOut(project=project_out(project), report=report_out(report))

    # -- output ------------------------------------------------------------

    @app.get("/projects/{pid}/export/abc", response_model=ExportOut)
    def export_abc(pid: str, phrase_index: int | None = Query(default=None)):
        return ExportOut(abc=workflow.export_abc(pid, phrase_index))

    @app.post("/projects/{pid}/synthesize", response_model=SynthesizeOut)
    def synthesize(pid: str, body: SynthesizeIn):
        audio, cached = workflow.synthesize(pid, body.phrase_index)
        return SynthesizeOut(audio=audio, cached=cached)

    @app.get("/projects/{pid}/score", response_model=ScoreOut)
    def score(pid: str):
        return workflow.score_projection(pid)

    return app
