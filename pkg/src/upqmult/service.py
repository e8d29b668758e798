"""HTTP service exposing the multiplicity computations.

Thin FastAPI wrapper: every endpoint delegates to a plain handler that
takes and returns JSON-friendly dicts, so the CLI can call the same
handlers in-process without a running server.  All rationals travel as
strings ("5/2"), big integers as decimal strings, and every response
carries a "schema": 1 marker.
"""

from __future__ import annotations

from typing import List, Optional, Union

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import blattner
from .exact import INF, format_rational, rational
from .partition import PartitionContext
from .roots import ABPattern, InvalidParameterError, deform_vector, wall_side

SCHEMA = 1

Entry = Union[int, str]
Blocks = List[List[Entry]]


def _blocks_out(blocks) -> list:
    return [[format_rational(x) for x in blk] for blk in blocks]


def _interval_out(lo, hi):
    return [lo, INF if hi == INF else hi]


# ---------------------------------------------------------------------------
# handlers (dict in, dict out); the CLI calls these directly


def handle_multiplicity(payload: dict) -> dict:
    res = blattner.discretemult(
        payload["mu"], payload["lambda"], payload["p"], payload["q"],
        with_contributions=bool(payload.get("contributions")),
    )
    out = {
        "schema": SCHEMA,
        "multiplicity": str(res.multiplicity),
        "signed_sum": str(res.signed_sum),
    }
    if payload.get("contributions"):
        out["contributions"] = [
            {"w": c["w"], "sign": c["sign"], "count": str(c["count"])}
            for c in res.contributions
        ]
    return out


def handle_direction(payload: dict) -> dict:
    table = blattner.multiplicity_direction(
        payload["lambda"], payload["v"], payload["p"], payload["q"]
    )
    if payload.get("streamline"):
        table = table.streamline()
    return {
        "schema": SCHEMA,
        "pieces": table.to_json(),
        "asymptotic": not table.last_piece().is_zero(),
    }


def handle_lowest(payload: dict) -> dict:
    low = blattner.lowest_k_type(payload["lambda"], payload["p"], payload["q"])
    return {"schema": SCHEMA, "mu": _blocks_out(low)}


def handle_vogan_lowest(payload: dict) -> dict:
    low = blattner.vogan_lowest_k_type(payload["lambda"], payload["p"], payload["q"])
    return {"schema": SCHEMA, "mu": _blocks_out(low)}


def parse_pattern(payload: dict) -> ABPattern:
    """Pattern from either a word like "aabb" or an explicit A list + n."""
    word = payload.get("pattern")
    if word is not None:
        if not word or set(word) - {"a", "b"}:
            raise InvalidParameterError("pattern word must be a nonempty a/b string")
        A = tuple(i + 1 for i, c in enumerate(word) if c == "a")
        return ABPattern(A, len(word))
    A = payload.get("A")
    n = payload.get("n")
    if A is None or n is None:
        raise InvalidParameterError("partition query needs a pattern word or A and n")
    return ABPattern(tuple(A), int(n))


def _reduced(coords, n: int, what: str) -> list:
    """Accept reduced (n-1) or ambient (n, sum zero) coordinates."""
    xs = [rational(x) for x in coords]
    if len(xs) == n - 1:
        return xs
    if len(xs) == n:
        if sum(xs, rational(0)) != 0:
            raise InvalidParameterError("%s ambient coordinates must sum to zero" % what)
        return xs[:-1]
    raise InvalidParameterError("%s must have %d or %d coordinates" % (what, n - 1, n))


def handle_partition(payload: dict) -> dict:
    pattern = parse_pattern(payload)
    ctx = PartitionContext(pattern)
    ray = payload.get("ray")
    if ray is not None:
        h0 = _reduced(ray["h0"], pattern.n, "h0")
        v = _reduced(ray["v"], pattern.n, "v")
        sample_t = rational(ray.get("sample_t", 1))
        poly = ctx.tope_polynomial(h0, v, sample_t)
        point = ctx._ray_point(h0, v, sample_t)
        walls = ctx.mpns.walls(tuple(range(1, pattern.n + 1)))
        tope = {
            "walls": [list(L) for L in walls],
            "signs": [wall_side(L, point) for L in walls],
        }
        return {"schema": SCHEMA, "poly": poly.to_strings(), "tope": tope}
    if payload.get("h") is None:
        raise InvalidParameterError("partition query needs h or a ray")
    h = _reduced(payload["h"], pattern.n, "h")
    if payload.get("oracle"):
        count = ctx.count_bruteforce(h)
    else:
        count = ctx.count(h)
    return {"schema": SCHEMA, "count": str(count)}


# ---------------------------------------------------------------------------
# FastAPI layer


class MultiplicityRequest(BaseModel):
    p: int
    q: int
    lam: Blocks = Field(alias="lambda")
    mu: Blocks
    contributions: bool = False


class DirectionRequest(BaseModel):
    p: int
    q: int
    lam: Blocks = Field(alias="lambda")
    v: Blocks
    streamline: bool = False


class LambdaRequest(BaseModel):
    p: int
    q: int
    lam: Blocks = Field(alias="lambda")


class RaySpec(BaseModel):
    h0: List[Entry]
    v: List[Entry]
    sample_t: Entry = 1


class PartitionRequest(BaseModel):
    pattern: Optional[str] = None
    A: Optional[List[int]] = None
    n: Optional[int] = None
    h: Optional[List[Entry]] = None
    ray: Optional[RaySpec] = None
    oracle: bool = False


def create_app() -> FastAPI:
    app = FastAPI(title="upqmult", version="1.0")

    @app.exception_handler(InvalidParameterError)
    async def _invalid(request, exc):
        return JSONResponse(
            status_code=422,
            content={"schema": SCHEMA, "error": {
                "name": type(exc).__name__, "message": str(exc)}},
        )

    @app.get("/v1/health")
    def health():
        return {"schema": SCHEMA, "status": "ok"}

    @app.post("/v1/multiplicity")
    def multiplicity(req: MultiplicityRequest):
        return handle_multiplicity({
            "mu": req.mu, "lambda": req.lam, "p": req.p, "q": req.q,
            "contributions": req.contributions,
        })

    @app.post("/v1/direction")
    def direction(req: DirectionRequest):
        return handle_direction({
            "lambda": req.lam, "v": req.v, "p": req.p, "q": req.q,
            "streamline": req.streamline,
        })

    @app.post("/v1/lowest-k-type")
    def lowest(req: LambdaRequest):
        return handle_lowest({"lambda": req.lam, "p": req.p, "q": req.q})

    @app.post("/v1/vogan-lowest-k-type")
    def vogan_lowest(req: LambdaRequest):
        return handle_vogan_lowest({"lambda": req.lam, "p": req.p, "q": req.q})

    @app.post("/v1/partition")
    def partition(req: PartitionRequest):
        payload = {
            "pattern": req.pattern, "A": req.A, "n": req.n,
            "h": req.h, "oracle": req.oracle,
        }
        if req.ray is not None:
            payload["ray"] = {
                "h0": req.ray.h0, "v": req.ray.v, "sample_t": req.ray.sample_t,
            }
        return handle_partition(payload)

    return app


app = create_app()
