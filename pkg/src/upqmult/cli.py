"""Command line front end.

Thin client over the service handlers: by default everything runs
in-process; with --url the same JSON payloads are POSTed to a running
server instead.  Parameters use the bracket-list shape familiar from the
literature, e.g. --lambda "[[5/2,-3/2],[3/2,-5/2]]", so published
examples paste directly into flags.

Exit codes: 0 success, 2 named validation/parse error, 1 internal
assertion failure.  Wall-clock time is reported on stderr as
"TT := <seconds>".
"""

from __future__ import annotations

import functools
import json
import re
import sys
import time

import click

from . import service
from .exact import INF, format_rational
from .roots import InvalidParameterError

_NUMBER = re.compile(r"-?\d+(?:/\d+)?")


def parse_bracket_list(text: str):
    """Parse a bracket list of rationals like [[5/2,-3/2],[3/2,-5/2]]."""
    body = _NUMBER.sub(lambda m: '"%s"' % m.group(0), text.strip())
    try:
        value = json.loads(body)
    except json.JSONDecodeError as e:
        raise InvalidParameterError(
            "cannot parse %r as a bracket list (at position %d)" % (text, e.pos)
        )
    return value


def _dispatch(ctx, endpoint: str, payload: dict) -> dict:
    url = ctx.obj.get("url")
    if url:
        import httpx

        r = httpx.post(url.rstrip("/") + endpoint, json=payload, timeout=None)
        if r.status_code == 422:
            err = r.json().get("error", {})
            raise InvalidParameterError(err.get("message", "validation error"))
        r.raise_for_status()
        return r.json()
    handler = {
        "/v1/multiplicity": service.handle_multiplicity,
        "/v1/direction": service.handle_direction,
        "/v1/lowest-k-type": service.handle_lowest,
        "/v1/vogan-lowest-k-type": service.handle_vogan_lowest,
        "/v1/partition": service.handle_partition,
    }[endpoint]
    return handler(payload)


def _emit_json(result: dict):
    click.echo(json.dumps(result, sort_keys=True))


def _format_piece(coeffs, interval):
    names = {0: "", 1: "t"}
    terms = []
    for d, c in enumerate(coeffs):
        if c == "0":
            continue
        unit = names.get(d, "t^%d" % d)
        if d == 0:
            terms.append(c)
        elif c == "1":
            terms.append(unit)
        elif c == "-1":
            terms.append("-" + unit)
        else:
            terms.append("%s*%s" % (c, unit))
    poly = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    hi = interval[1]
    return "[%s, [%s, %s]]" % (poly, interval[0], hi)


def timed_command(f):
    """Run a command body, print TT timing to stderr, map errors to codes."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        try:
            f(*args, **kwargs)
        except InvalidParameterError as e:
            click.echo("%s: %s" % (type(e).__name__, e), err=True)
            sys.exit(2)
        except AssertionError as e:
            click.echo("internal error: %s" % e, err=True)
            sys.exit(1)
        finally:
            click.echo("TT := %.3f" % (time.perf_counter() - t0), err=True)

    return wrapper


@click.group()
@click.option("--url", default=None, help="Base URL of a running server; "
              "defaults to in-process evaluation.")
@click.option("--threads", default=1, show_default=True,
              help="Parallelism cap (accepted for compatibility; "
              "evaluation is single-threaded).")
@click.pass_context
def main(ctx, url, threads):
    """Exact K-type multiplicities of discrete series of U(p,q)."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url
    ctx.obj["threads"] = threads


@main.command()
@click.option("--mu", required=True, help='K-parameter, e.g. "[[7/2,-3/2],[3/2,-7/2]]"')
@click.option("--lambda", "lam", required=True, help="Harish-Chandra parameter")
@click.option("-p", required=True, type=int)
@click.option("-q", required=True, type=int)
@click.option("--json", "as_json", is_flag=True)
@click.option("--verbose", is_flag=True, help="Include the per-w signed ledger.")
@click.pass_context
@timed_command
def mult(ctx, mu, lam, p, q, as_json, verbose):
    """Multiplicity of the K-type mu in the discrete series of lambda."""
    payload = {
        "mu": parse_bracket_list(mu), "lambda": parse_bracket_list(lam),
        "p": p, "q": q, "contributions": verbose,
    }
    result = _dispatch(ctx, "/v1/multiplicity", payload)
    if as_json:
        _emit_json(result)
        return
    click.echo(result["multiplicity"])
    if verbose:
        click.echo("signed sum: %s" % result["signed_sum"], err=True)
        for c in result.get("contributions", []):
            click.echo("  w=%s sign=%+d count=%s" % (c["w"], c["sign"], c["count"]),
                       err=True)


@main.command()
@click.option("--lambda", "lam", required=True)
@click.option("--v", required=True, help='Direction blocks, e.g. "[[1,0],[0,-1]]"')
@click.option("-p", required=True, type=int)
@click.option("-q", required=True, type=int)
@click.option("--streamline", is_flag=True, help="Merge redundant pieces.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
@timed_command
def direction(ctx, lam, v, p, q, streamline, as_json):
    """Piecewise polynomial of multiplicities along lowest K-type + t*v."""
    payload = {
        "lambda": parse_bracket_list(lam), "v": parse_bracket_list(v),
        "p": p, "q": q, "streamline": streamline,
    }
    result = _dispatch(ctx, "/v1/direction", payload)
    if as_json:
        _emit_json(result)
        return
    for piece in result["pieces"]:
        click.echo(_format_piece(piece["coeffs"], piece["interval"]))
    click.echo("asymptotic: %s" % result["asymptotic"], err=True)


def _lambda_command(name, endpoint, doc):
    @main.command(name=name, help=doc)
    @click.option("--lambda", "lam", required=True)
    @click.option("-p", required=True, type=int)
    @click.option("-q", required=True, type=int)
    @click.option("--json", "as_json", is_flag=True)
    @click.pass_context
    @timed_command
    def cmd(ctx, lam, p, q, as_json):
        payload = {"lambda": parse_bracket_list(lam), "p": p, "q": q}
        result = _dispatch(ctx, endpoint, payload)
        if as_json:
            _emit_json(result)
            return
        click.echo("[[%s],[%s]]" % tuple(",".join(blk) for blk in result["mu"]))


_lambda_command("lowest", "/v1/lowest-k-type",
                "Lowest K-type parameter lambda + rho_n.")
_lambda_command("vogan-lowest", "/v1/vogan-lowest-k-type",
                "Highest weight of the lowest K-type (lambda + rho_n - rho_c).")


@main.command()
@click.option("--pattern", default=None, help='Word like "aabb" giving the A/B split.')
@click.option("--a-set", "a_set", default=None,
              help='Explicit A as "[1,3]"; requires --n.')
@click.option("--n", default=None, type=int, help="Ambient size p+q for --a-set.")
@click.option("--h", default=None, help='Target vector, reduced or ambient, e.g. "[1,1,-1]"')
@click.option("--symbolic-ray", "ray", default=None,
              help='Ray "h0;v" as two bracket lists, e.g. "[0,1,0];[1,1,-1]"')
@click.option("--sample-t", default="1", show_default=True,
              help="Ray parameter selecting the tope of h0 + t*v.")
@click.option("--oracle", is_flag=True, help="Use the brute-force counting path.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
@timed_command
def partition(ctx, pattern, a_set, n, h, ray, sample_t, oracle, as_json):
    """Kostant partition count, or its polynomial along a ray."""
    payload = {"pattern": pattern, "oracle": oracle}
    if a_set is not None:
        payload["A"] = [int(x) for x in parse_bracket_list(a_set)]
        payload["n"] = n
    if ray is not None:
        try:
            h0_text, v_text = ray.split(";")
        except ValueError:
            raise InvalidParameterError('--symbolic-ray must look like "[h0];[v]"')
        payload["ray"] = {
            "h0": parse_bracket_list(h0_text), "v": parse_bracket_list(v_text),
            "sample_t": sample_t,
        }
    elif h is not None:
        payload["h"] = parse_bracket_list(h)
    result = _dispatch(ctx, "/v1/partition", payload)
    if as_json:
        _emit_json(result)
        return
    if "count" in result:
        click.echo(result["count"])
    else:
        click.echo(_format_piece(result["poly"], [0, INF]).split(", [")[0].lstrip("["))


@main.command()
@click.option("--max-size", default=4, show_default=True,
              help="Largest p+q exercised by the randomized suites.")
@click.option("--bound", default=4, show_default=True,
              help="Coordinate bound for random targets.")
@click.option("--seed", default=1, show_default=True)
@timed_command
def selftest(max_size, bound, seed):
    """Randomized oracle-equivalence and invariant suites."""
    from .selftest import run_selftest

    report = run_selftest(max_size, bound, seed)
    for line in report["lines"]:
        click.echo(line)
    if not report["passed"]:
        raise AssertionError("selftest failed; reproducers above")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("upqmult.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
