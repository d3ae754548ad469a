"""Command line front end: ``morikit <command> -c config.json``.

Exit codes: 0 success, 2 invalid input (a JSON error object is written),
3 result incomplete under ``--require-complete``, 64 usage error.
"""
from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
from fractions import Fraction
from typing import Any

from . import __version__, intmath, quadric
from .chambers import (
    ConeError,
    UnsupportedRankError,
    movable_decomposition,
    mori_cone,
    nef_cone,
)
from .enumeration import (
    BudgetError,
    EnumerationBudget,
    PolarizationOnWallError,
    box_oracle,
    default_budget,
    enumerate_theorem_set,
    k3_pseudoeffective,
)
from .lattice import LatticeError
from .markman import ExtendedAlgebraicLattice, H2Coordinates, from_k3_hilbert, from_raw, h2_alg_basis

SCHEMA = "morikit/1"
EXIT_OK, EXIT_INVALID, EXIT_INCOMPLETE, EXIT_USAGE = 0, 2, 3, 64
COMMANDS = ("build", "mori", "nef", "movable", "k3cone", "check", "slice")


class ConfigError(ValueError):
    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        super().__init__("; ".join(f"{p}: {m}" for p, m in problems))


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Exact rational as 'p/q' (or 'p' when integral)."""
    return str(Fraction(x))


def fvec(xs) -> list[str]:
    return [fmt(x) for x in xs]


def parse_rational(s, path: str) -> Fraction:
    try:
        if isinstance(s, bool) or isinstance(s, float):
            raise ValueError
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ConfigError([(path, f"expected an exact rational 'p/q', got {s!r}")])


def _int_matrix(x, path):
    if not isinstance(x, list) or not x or not all(isinstance(r, list) for r in x):
        raise ConfigError([(path, "expected a non-empty list of integer rows")])
    if not all(isinstance(c, int) and not isinstance(c, bool) for r in x for c in r):
        raise ConfigError([(path, "entries must be integers")])
    return x


def _int_vector(x, path):
    if not isinstance(x, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        raise ConfigError([(path, "expected a list of integers")])
    return x


class Job:
    """Parsed configuration."""

    def __init__(self, cfg: dict):
        if not isinstance(cfg, dict):
            raise ConfigError([("", "config must be a JSON object")])
        model = cfg.get("model")
        if not isinstance(model, dict):
            raise ConfigError([("model", "missing or not an object")])
        kinds = [k for k in ("k3", "raw") if k in model]
        if len(kinds) != 1:
            raise ConfigError([("model", "exactly one of 'k3' or 'raw' is required")])
        self.kind = kinds[0]
        m = model[self.kind]
        if not isinstance(m, dict):
            raise ConfigError([(f"model.{self.kind}", "must be an object")])
        self.model_cfg = m
        self.ample = cfg.get("ample")
        if self.ample is not None:
            _int_vector(self.ample, "ample")
        budget = cfg.get("budget", {}) or {}
        if not isinstance(budget, dict):
            raise ConfigError([("budget", "must be an object")])
        self.height_bound = None
        if "height_bound" in budget:
            self.height_bound = parse_rational(budget["height_bound"], "budget.height_bound")
            if self.height_bound <= 0:
                raise ConfigError([("budget.height_bound", "must be positive")])
        self.word_bound = budget.get("word_bound", 8)
        if not isinstance(self.word_bound, int) or self.word_bound < 1:
            raise ConfigError([("budget.word_bound", "must be a positive integer")])
        out = cfg.get("output", {}) or {}
        self.format = out.get("format", "json")
        if self.format not in ("json", "tsv"):
            raise ConfigError([("output.format", "must be 'json' or 'tsv'")])
        self.path = out.get("path")
        sl = cfg.get("slice", {}) or {}
        if not isinstance(sl, dict):
            raise ConfigError([("slice", "must be an object")])
        self.plane = sl.get("plane")

    def model(self) -> ExtendedAlgebraicLattice:
        m, k = self.model_cfg, self.kind
        problems = []
        if k == "k3":
            for key in ("gram", "polarization", "n"):
                if key not in m:
                    problems.append((f"model.k3.{key}", "required"))
            if problems:
                raise ConfigError(problems)
            gram = _int_matrix(m["gram"], "model.k3.gram")
            pol = _int_vector(m["polarization"], "model.k3.polarization")
            if not isinstance(m["n"], int):
                raise ConfigError([("model.k3.n", "must be an integer")])
            E = _validated(lambda: from_k3_hilbert(gram, m["n"], pol), "model.k3")
        else:
            ample = m.get("ample", self.ample)
            for key in ("gram", "v"):
                if key not in m:
                    problems.append((f"model.raw.{key}", "required"))
            if ample is None:
                problems.append(("model.raw.ample", "required for raw models"))
            if problems:
                raise ConfigError(problems)
            gram = _int_matrix(m["gram"], "model.raw.gram")
            v = _int_vector(m["v"], "model.raw.v")
            ample = _int_vector(ample, "model.raw.ample")
            delta = m.get("delta")
            if delta is not None:
                _int_vector(delta, "model.raw.delta")
            E = _validated(lambda: from_raw(gram, v, ample, delta=delta), "model.raw")
        if self.ample is not None and k == "k3":
            E = _validated(lambda: E.with_ample(self.ample), "ample")
        return E

    def budget(self, E, override=None) -> EnumerationBudget:
        hb = override if override is not None else self.height_bound
        return EnumerationBudget(hb) if hb is not None else default_budget(E)


def _validated(fn, prefix):
    try:
        return fn()
    except LatticeError as exc:
        field = getattr(exc, "field", "")
        raise ConfigError([(f"{prefix}.{field}" if field else prefix, str(exc))]) from exc


# -- command implementations --------------------------------------------------


def _model_block(E: ExtendedAlgebraicLattice) -> dict:
    coords = H2Coordinates(E)
    out = {
        "raw": E.to_raw(),
        "n": E.n,
        "v_sq": E.v_sq,
        "h_sq": E.pair(E.h, E.h),
        "h2_basis": [list(b.coords) for b in h2_alg_basis(E)],
        "h2_gram": [list(r) for r in coords.gram],
        "h2_signature": [1, coords.rho - 1] if coords.rho else [0, 0],
    }
    if E.delta is not None:
        out["delta"] = list(E.delta)
        out["delta_sq"] = E.pair(E.delta, E.delta)
    return out


def _ray_record(coords: H2Coordinates, t) -> dict:
    return {
        "coords": fvec(t.R.coords),
        "h2": fvec(coords.to_h2(t.R)),
        "q": fmt(t.R.q),
        "height": fmt(t.height),
        "denominator": t.R.denominator,
        "a": list(t.a),
        "a_sq": t.a_sq,
        "av": t.av,
    }


def cmd_build(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    return {"model": _model_block(E)}, True


def cmd_mori(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    b = job.budget(E, args.height_bound)
    C = mori_cone(E, b)
    return {
        "model": _model_block(E),
        "height_bound": fmt(b.height_bound),
        "length_bound": fmt(Fraction(-(E.n + 3), 2)),
        "rays": [_ray_record(C.coords, t) for t in C.rays],
        "positive_cone": {"gram": [list(r) for r in C.gram], "h": list(C.h)},
        "complete": C.complete,
    }, C.complete


def _nef_block(nef) -> dict:
    return {
        "facets": [list(f) for f in nef.cone.facets],
        "rays": [list(r) for r in nef.rational_rays()],
        "walls": [fvec(w.coords) for w in nef.walls],
        "complete": nef.complete,
    }


def cmd_nef(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    b = job.budget(E, args.height_bound)
    nef = nef_cone(E, b)
    return {"model": _model_block(E), "height_bound": fmt(b.height_bound), "nef": _nef_block(nef)}, nef.complete


def cmd_movable(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    b = job.budget(E, args.height_bound)
    wb = args.word_bound if args.word_bound is not None else job.word_bound
    D = movable_decomposition(E, b, wb)
    chambers = []
    for ch in D.chambers:
        block = _nef_block(ch.nef)
        block.update(
            {
                "exceptional": list(ch.exceptional),
                "interior_point": fvec(ch.interior),
                "ample": list(ch.ample),
                "contains_h": ch.contains_h,
            }
        )
        chambers.append(block)
    return {
        "model": _model_block(E),
        "height_bound": fmt(b.height_bound),
        "word_bound": wb,
        "chambers": chambers,
        "movable_walls": [list(w) for w in D.walls],
        "complete": D.complete,
    }, D.complete


def cmd_k3cone(job: Job, args) -> tuple[dict, bool]:
    if job.kind != "k3":
        raise ConfigError([("model", "k3cone needs a 'k3' model")])
    m = job.model_cfg
    gram = _int_matrix(m.get("gram"), "model.k3.gram")
    pol = _int_vector(m.get("polarization"), "model.k3.polarization")
    hb = args.height_bound if args.height_bound is not None else job.height_bound
    b = EnumerationBudget(hb if hb is not None else 20)
    try:
        rays = k3_pseudoeffective(gram, pol, b)
    except LatticeError as exc:
        raise ConfigError([("model.k3.gram", str(exc))]) from exc
    except ValueError as exc:
        raise ConfigError([("model.k3", str(exc))]) from exc
    rho = len(gram)
    complete = rho <= 2
    return {"picard_gram": gram, "polarization": pol, "height_bound": fmt(b.height_bound),
            "rays": [list(r) for r in rays], "complete": complete}, complete


def cmd_check(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    cb = args.coeff_bound if args.coeff_bound is not None else 8
    if cb < 1:
        raise ConfigError([("--coeff-bound", "must be >= 1")])
    b = job.budget(E, args.height_bound)
    enum = {t.a for t in enumerate_theorem_set(E, b) if max(map(abs, t.a)) <= cb}
    oracle = {
        t.a for t in box_oracle(E, cb) if t.R.q < 0 and t.height <= b.height_bound
    }
    bound = Fraction(-(E.n + 3), 2)
    return {
        "model": _model_block(E),
        "coeff_bound": cb,
        "height_bound": fmt(b.height_bound),
        "enumerated": len(enum),
        "oracle": len(oracle),
        "oracle_match": enum == oracle,
        "only_enumerated": [list(a) for a in sorted(enum - oracle)],
        "only_oracle": [list(a) for a in sorted(oracle - enum)],
        "length_bound_ok": all(t.R.q >= bound for t in enumerate_theorem_set(E, b)),
    }, True


def _slice_frame(gram, h):
    """Orthogonal basis of h^perp for the slice {(h, x) = 1}."""
    rho = len(gram)
    hh = Fraction(quadric.qform(gram, h))
    center = [Fraction(c) / hh for c in h]
    basis = []
    for i in range(rho):
        e = [Fraction(int(i == j)) for j in range(rho)]
        for b in [list(h)] + basis:
            e = [x - Fraction(quadric.qform(gram, e, b), quadric.qform(gram, b)) * y for x, y in zip(e, b)]
        if any(e):
            basis.append(e)
        if len(basis) == rho - 1:
            break
    return center, basis


def cmd_slice(job: Job, args) -> tuple[dict, bool]:
    E = job.model()
    b = job.budget(E, args.height_bound)
    wb = args.word_bound if args.word_bound is not None else job.word_bound
    D = movable_decomposition(E, b, wb)
    gram = D.gram
    rho = len(gram)
    if rho not in (2, 3):
        raise ConfigError([("model", f"slice supports rank(H^2_alg) in {{2, 3}}, got {rho}")])
    h = D.h
    plane = args.plane if args.plane is not None else job.plane
    if plane is not None:
        src = "--plane" if args.plane is not None else "slice.plane"
        try:
            h = tuple(int(c) for c in (plane.split(",") if isinstance(plane, str) else plane))
        except (TypeError, ValueError) as exc:
            raise ConfigError([(src, "expected integers in the H^2_alg basis")]) from exc
        if len(h) != rho or not quadric.in_positive_interior(gram, D.h, h):
            raise ConfigError([(src, "plane normal must lie inside the positive cone (H^2_alg coordinates)")])
    center, basis = _slice_frame(gram, h)
    scales = [-quadric.qform(gram, e) for e in basis]  # positive: h^perp is negative definite
    radius_sq = 1 / Fraction(quadric.qform(gram, h))

    def to_slice(x):
        s = quadric.qform(gram, h, x)
        return [Fraction(quadric.qform(gram, x, e), quadric.qform(gram, e)) / s for e in basis]

    def line(covector):
        # covector . (center + sum u_i e_i) = 0 in slice coordinates u
        return {"coeffs": fvec(intmath.dot(covector, e) for e in basis), "const": fmt(intmath.dot(covector, center))}

    samples = args.samples
    if samples < 4:
        raise ConfigError([("--samples", "must be at least 4")])
    if rho == 2:
        r = Fraction(math.sqrt(radius_sq / scales[0])).limit_denominator(10**6)
        boundary = [[-r], [r]]
    else:
        boundary = []
        for k in range(samples):
            ang = 2 * math.pi * k / samples
            boundary.append([
                Fraction(math.sqrt(radius_sq / scales[0]) * math.cos(ang)).limit_denominator(10**6),
                Fraction(math.sqrt(radius_sq / scales[1]) * math.sin(ang)).limit_denominator(10**6),
            ])

    def lift(u):
        return [c + sum(ui * e[i] for ui, e in zip(u, basis)) for i, c in enumerate(center)]

    chambers = []
    for ch in D.chambers:
        verts = [to_slice(r) for r in ch.nef.rational_rays() if quadric.qform(gram, h, r) > 0]
        arc = [u for u in boundary if all(intmath.dot(f, lift(u)) >= 0 for f in ch.cone.facets)]
        pts = verts + arc
        if rho == 3 and pts:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        else:
            pts.sort()
        chambers.append(
            {
                "walls": [line(f) for f in ch.cone.facets],
                "vertices": [fvec(v) for v in verts],
                "polyline": [fvec(p) for p in pts],
                "contains_h": ch.contains_h,
            }
        )
    boundary = [fvec(u) for u in boundary]
    return {
        "model": _model_block(E),
        "plane": {"normal": list(h), "center": fvec(center), "basis": [fvec(e) for e in basis]},
        "positive_cone_boundary": {"approximate": True, "points": boundary},
        "chambers": chambers,
        "movable_walls": [line(intmath.matvec(gram, w)) for w in D.walls],
        "complete": D.complete,
    }, D.complete


HANDLERS = {
    "build": cmd_build,
    "mori": cmd_mori,
    "nef": cmd_nef,
    "movable": cmd_movable,
    "k3cone": cmd_k3cone,
    "check": cmd_check,
    "slice": cmd_slice,
}


# -- output -------------------------------------------------------------------


def _tsv(command: str, payload: dict) -> str:
    lines = []
    if command == "mori":
        lines.append("coords\th2\tq\theight\ta\ta_sq\tav")
        for r in payload["rays"]:
            lines.append("\t".join([",".join(r["coords"]), ",".join(r["h2"]), r["q"], r["height"],
                                    ",".join(map(str, r["a"])), str(r["a_sq"]), str(r["av"])]))
    elif command in ("nef",):
        lines.append("kind\tvector")
        lines += [f"facet\t{','.join(map(str, f))}" for f in payload["nef"]["facets"]]
        lines += [f"ray\t{','.join(map(str, r))}" for r in payload["nef"]["rays"]]
    elif command == "movable":
        lines.append("chamber\tcontains_h\tfacets\trays")
        for i, ch in enumerate(payload["chambers"]):
            lines.append("\t".join([str(i), str(ch["contains_h"]).lower(),
                                    ";".join(",".join(map(str, f)) for f in ch["facets"]),
                                    ";".join(",".join(map(str, r)) for r in ch["rays"])]))
    elif command == "k3cone":
        lines.append("ray")
        lines += [",".join(map(str, r)) for r in payload["rays"]]
    else:
        flat = dict(payload.get("model", {}))
        flat.update({k: v for k, v in payload.items() if k != "model"})
        lines.append("key\tvalue")
        lines += [f"{k}\t{json.dumps(v, sort_keys=True)}" for k, v in sorted(flat.items())]
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="morikit", description="Mori, nef and movable cones of K3^[n]-type varieties.")
    p.add_argument("--version", action="version", version=f"morikit {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("-c", "--config", required=True)
    p.add_argument("--height-bound")
    p.add_argument("--word-bound", type=int)
    p.add_argument("--coeff-bound", type=int)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--plane", help="slice plane {(p, x) = 1}; p as comma-separated H^2_alg coordinates")
    p.add_argument("--format", choices=("json", "tsv"))
    p.add_argument("-o", "--output")
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--require-complete", action="store_true")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"morikit: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        if args.height_bound is not None:
            args.height_bound = parse_rational(args.height_bound, "--height-bound")
            if args.height_bound <= 0:
                raise ConfigError([("--height-bound", "must be positive")])
        if args.word_bound is not None and args.word_bound < 1:
            raise ConfigError([("--word-bound", "must be positive")])
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError([("--config", str(exc))]) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError([("--config", f"invalid JSON: {exc}")]) from exc
        job = Job(cfg)
        payload, complete = HANDLERS[args.command](job, args)
    except ConfigError as exc:
        return _fail(args, "validation_error", str(exc), [p for p, _ in exc.problems])
    except (PolarizationOnWallError, ConeError, BudgetError, UnsupportedRankError) as exc:
        return _fail(args, type(exc).__name__, str(exc), [getattr(exc, "field", "")])
    out = {"schema": SCHEMA, "command": args.command, **payload}
    if not args.deterministic:
        out["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    fmt_ = args.format or job.format
    text = _tsv(args.command, out) if fmt_ == "tsv" else json.dumps(out, indent=2, sort_keys=True) + "\n"
    _emit(text, args.output or job.path)
    if args.require_complete and not complete:
        return EXIT_INCOMPLETE
    return EXIT_OK


def _fail(args, kind: str, message: str, fields: list[str]) -> int:
    err = {"schema": SCHEMA, "error": {"type": kind, "message": message, "fields": fields}}
    sys.stdout.write(json.dumps(err, indent=2, sort_keys=True) + "\n")
    return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
