"""HTTP service wrapping the solver core.

Endpoints:

* ``GET /health`` — liveness probe.
* ``POST /generate`` — render a built-in problem family as a document.
* ``POST /validate`` — parse and validate a document, returning diagnostics.
* ``POST /solve`` — solve a document or a generated problem.

Each solve builds its own decision-diagram manager, so requests are

independent; long-running solves simply hold their worker until done.
Run with ``uvicorn fluentplan.service:app``.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, model_validator

from . import __version__
from .domfile import (
    DomainSyntaxError,
    DomainValidationError,
    format_domain,
    parse_domain,
)
from .encoder import EncodingError
from .generators import generate_blocksworld, generate_gripper
from .solver import SolveOptions, solve

app = FastAPI(title="fluentplan", version=__version__)


class GenerateRequest(BaseModel):
    family: Literal["gripper", "blocksworld"]
    n: int = Field(ge=1, le=200)


class GenerateResponse(BaseModel):
    name: str
    domain_text: str


class ValidateRequest(BaseModel):
    domain_text: str


class ValidateResponse(BaseModel):
    valid: bool
    diagnostics: list[str] = []


class SolveRequest(BaseModel):
    domain_text: str | None = None
    gripper: int | None = Field(default=None, ge=1, le=200)
    blocksworld: int | None = Field(default=None, ge=2, le=20)
    order: Literal["sort", "lexical"] = "sort"
    partition_threshold: int | None = None
    frontier: bool = False
    include_noop: bool = True
    max_steps: int | None = Field(default=None, ge=1)
    extract_plan: bool = True

    @model_validator(mode="after")
    def _one_source(self) -> "SolveRequest":
        sources = [
            s for s in (self.domain_text, self.gripper, self.blocksworld)
            if s is not None
        ]
        if len(sources) != 1:
            raise ValueError(
                "exactly one of domain_text, gripper, blocksworld is required"
            )
        return self


class PlanStep(BaseModel):
    index: int
    action: str


class SolveResponse(BaseModel):
    problem: str
    outcome: Literal["plan", "no_plan", "limit"]
    goal_step: int | None
    plan_length: int | None
    plan: list[PlanStep] | None
    num_fluents: int
    num_actions: int
    num_variables: int
    order: str
    partition_threshold: int | None
    frontier: bool
    include_noop: bool
    part_sizes: list[int]
    layer_node_counts: list[int]
    reached_nodes: int
    reached_states: int
    peak_live_nodes: int
    steps_expanded: int
    wall_time_s: float


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/generate", response_model=GenerateResponse)
def generate(request: GenerateRequest) -> GenerateResponse:
    if request.family == "gripper":
        problem = generate_gripper(request.n)
    else:
        if request.n < 2:
            raise HTTPException(422, detail="blocksworld needs n >= 2")
        problem = generate_blocksworld(request.n)
    return GenerateResponse(name=problem.name, domain_text=format_domain(problem))


@app.post("/validate", response_model=ValidateResponse)
def validate(request: ValidateRequest) -> ValidateResponse:
    try:
        parse_domain(request.domain_text)
    except DomainSyntaxError as exc:
        return ValidateResponse(valid=False, diagnostics=[str(exc)])
    except DomainValidationError as exc:
        return ValidateResponse(valid=False, diagnostics=exc.diagnostics)
    return ValidateResponse(valid=True)


@app.post("/solve", response_model=SolveResponse)
def solve_endpoint(request: SolveRequest) -> SolveResponse:
    try:
        if request.domain_text is not None:
            problem = parse_domain(request.domain_text)
        elif request.gripper is not None:
            problem = generate_gripper(request.gripper)
        else:
            problem = generate_blocksworld(request.blocksworld)
    except DomainSyntaxError as exc:
        raise HTTPException(400, detail=[str(exc)])
    except DomainValidationError as exc:
        raise HTTPException(400, detail=exc.diagnostics)

    options = SolveOptions(
        order=request.order,
        partition_threshold=request.partition_threshold,
        frontier=request.frontier,
        include_noop=request.include_noop,
        max_steps=request.max_steps,
        extract=request.extract_plan,
    )
    try:
        result = solve(problem, options)
    except EncodingError as exc:
        raise HTTPException(400, detail=[str(exc)])

    plan = None
    if result.plan is not None:
        plan = [
            PlanStep(index=i, action=str(a))
            for i, a in enumerate(result.plan.steps, start=1)
        ]
    report = result.report
    return SolveResponse(
        problem=report.problem,
        outcome=report.outcome,
        goal_step=report.goal_step,
        plan_length=report.plan_length,
        plan=plan,
        num_fluents=report.num_fluents,
        num_actions=report.num_actions,
        num_variables=report.num_variables,
        order=report.order,
        partition_threshold=report.partition_threshold,
        frontier=report.frontier,
        include_noop=report.include_noop,
        part_sizes=report.part_sizes,
        layer_node_counts=report.layer_node_counts,
        reached_nodes=report.reached_nodes,
        reached_states=report.reached_states,
        peak_live_nodes=report.peak_live_nodes,
        steps_expanded=report.steps_expanded,
        wall_time_s=report.wall_time_s,
    )
