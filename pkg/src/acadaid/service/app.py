"""FastAPI wrapper: pydantic request/response models over AnalysisEngine."""

import math

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .config import ServiceConfig
from .engine import AnalysisEngine, ModelsNotLoaded


class AnalyzeRequest(BaseModel):
    text: str
    k: int = Field(default=4, ge=1, le=50)


class TokenModel(BaseModel):
    text: str
    start: int
    end: int


class FlagModel(BaseModel):
    token_index: int
    confidence: float


class SuggestionModel(BaseModel):
    word: str
    score: float


class AnalyzeResponse(BaseModel):
    tokens: list[TokenModel]
    flags: list[FlagModel]
    suggestions: dict[int, list[SuggestionModel]]


class EntryModel(BaseModel):
    tokens: str
    n: int
    acad_rate: float
    nonacad_rate: float
    # strict JSON cannot carry Infinity: null means an infinite ratio
    ratio: float | None
    sources: list[str]
    label: str


class LookupResponse(BaseModel):
    found: bool
    entry: EntryModel | None = None


class HealthResponse(BaseModel):
    status: str
    gaps: list[str]
    counts: dict[str, int]


class AppState:
    """Holds the engine snapshot; reload swaps it in a single assignment,
    so in-flight requests keep the snapshot they started with."""

    def __init__(self, engine: AnalysisEngine, config: ServiceConfig | None = None):
        self.engine = engine
        self.config = config

    def reload(self) -> None:
        if self.config is None:
            raise RuntimeError("no config to reload from")
        self.engine = AnalysisEngine.from_config(self.config)


def analysis_to_response(result) -> AnalyzeResponse:
    return AnalyzeResponse(
        tokens=[TokenModel(text=t.text, start=t.start, end=t.end) for t in result.tokens],
        flags=[FlagModel(token_index=f.token_index, confidence=f.confidence) for f in result.flags],
        suggestions={
            index: [SuggestionModel(word=w, score=s) for w, s in ranked]
            for index, ranked in result.suggestions.items()
        },
    )


def create_app(engine: AnalysisEngine, config: ServiceConfig | None = None) -> FastAPI:
    app = FastAPI(title="acadaid", version="0.1.0")
    state = AppState(engine, config)
    app.state.acadaid = state

    origins = config.cors_origins if config is not None else ["*"]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(request: AnalyzeRequest):
        try:
            result = state.engine.analyze(request.text, request.k)
        except ModelsNotLoaded as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        return analysis_to_response(result)

    @app.get("/resource/lookup", response_model=LookupResponse)
    def lookup(phrase: str):
        try:
            entry = state.engine.lookup(phrase)
        except ModelsNotLoaded as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        if entry is None:
            return LookupResponse(found=False)
        return LookupResponse(
            found=True,
            entry=EntryModel(
                tokens=" ".join(entry.phrase),
                n=entry.n,
                acad_rate=entry.acad_rate,
                nonacad_rate=entry.nonacad_rate,
                ratio=None if math.isinf(entry.ratio) else entry.ratio,
                sources=sorted(entry.sources),
                label=entry.label,
            ),
        )

    @app.get("/health", response_model=HealthResponse)
    def health():
        report = state.engine.health()
        return HealthResponse(status=report.status, gaps=report.gaps, counts=report.counts)

    return app


def app_from_config(config: ServiceConfig) -> FastAPI:
    return create_app(AnalysisEngine.from_config(config), config)
