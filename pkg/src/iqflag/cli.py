"""Command line entry point: ``iqflag verify | act | orbits | theta | oracle``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .convolution import kclass, verify_action_oracle
from .drinfeld import TAGS, default_jobs, run_suite, summarize
from .flagcomb import (
    Composition,
    ThetaMatrix,
    bruhat_leq,
    compose,
    compose_brute,
    compose_closed_form,
    decompose,
    ell,
    enum_compositions,
    enum_matrices,
    ro_co,
)
from .iqops import (
    apply_Bn,
    apply_E,
    apply_F,
    apply_Iv,
    apply_K,
    apply_Theta,
    theta_check_coeff,
    theta_coeff,
    theta_orig_series,
    th2_factor,
)
from .repmodule import ModuleElement, spanning_set
from .symalg import RatFun, XLaurent, series_mul

__all__ = ["main", "RunConfig", "parse_word", "load_config"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n: int = 2
    d: int = 2
    window: int = 2
    relations: list[str] = field(default_factory=list)
    exp_lo: int = -2
    exp_hi: int = 2
    support: int = 2
    jobs: int = 1
    json: str | None = None
    seed: int | None = None
    extra: int = 0
    original_forms: bool = False

    def validate(self) -> "RunConfig":
        if self.n < 1 or self.d < 1:
            raise UsageError("n and d must be positive")
        if self.window < 0:
            raise UsageError("window must be nonnegative")
        if self.exp_lo > self.exp_hi:
            raise UsageError("empty exponent range")
        if self.jobs < 1:
            raise UsageError("jobs must be positive")
        bad = [r for r in self.relations if r not in TAGS]
        if bad:
            raise UsageError(f"unknown relation tag(s): {', '.join(bad)}; expected one of {', '.join(TAGS)}")
        return self


_INT_KEYS = ("n", "d", "window", "exp_lo", "exp_hi", "support", "jobs", "seed", "extra")


def load_config(path: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}") from e
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in _INT_KEYS:
            try:
                out[key] = int(val)
            except ValueError as e:
                raise UsageError(f"{path}:{lineno}: {key} needs an integer") from e
        elif key in ("relation", "relations"):
            out["relations"] = [t.strip() for t in val.split(",") if t.strip()]
        elif key == "json":
            out["json"] = val
        elif key == "original_forms":
            out["original_forms"] = val.lower() in ("1", "true", "yes", "on")
        else:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def _config_from(args) -> RunConfig:
    values = load_config(args.config) if getattr(args, "config", None) else {}
    cfg = RunConfig()
    for k, v in values.items():
        setattr(cfg, k, v)
    for k in _INT_KEYS + ("json",):
        v = getattr(args, k, None)
        if v is not None:
            setattr(cfg, k, v)
    if getattr(args, "relation", None):
        cfg.relations = list(args.relation)
    if getattr(args, "original_forms", False):
        cfg.original_forms = True
    if getattr(args, "jobs", None) is None and "jobs" not in values:
        cfg.jobs = default_jobs()
    return cfg.validate()


def _random_vectors(n: int, d: int, base: list, count: int, seed: int) -> list:
    rng = random.Random(seed)
    by_grade: dict = {}
    for label, e in base:
        by_grade.setdefault(e.grades()[0], []).append((label, e))
    grades = sorted(by_grade)
    out = []
    for t in range(count):
        pool = by_grade[rng.choice(grades)]
        picks = rng.sample(pool, min(3, len(pool)))
        acc = ModuleElement(n, d)
        for _, e in picks:
            acc = acc + e.scale(rng.choice([-2, -1, 1, 2, 3]))
        if not acc.is_zero():
            out.append((f"rand{seed}:{t}", acc))
    return out


def _emit(obj, path: str | None):
    text = json.dumps(obj, indent=1)
    if path:
        Path(path).write_text(text + "\n")
    return text


# --- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = _config_from(args)
    testset = spanning_set(cfg.n, cfg.d, cfg.exp_lo, cfg.exp_hi, cfg.support)
    if cfg.seed is not None:
        testset += _random_vectors(cfg.n, cfg.d, testset, cfg.extra or 3, cfg.seed)
    reports = run_suite(
        cfg.n, cfg.d, cfg.window, testset,
        tags=cfg.relations or None, original_forms=cfg.original_forms, jobs=cfg.jobs,
    )
    counts = summarize(reports)
    width = max((len(k) for k in counts), default=8)
    for label, c in counts.items():
        mark = "ok  " if c["fail"] == 0 else "FAIL"
        print(f"{mark} {label:<{width}}  pass={c['pass']:<6d} fail={c['fail']}")
    total_fail = sum(c["fail"] for c in counts.values())
    print(f"n={cfg.n} d={cfg.d} window={cfg.window} vectors={len(testset)} "
          f"checks={len(reports)} failed={total_fail}")
    if cfg.json:
        _emit({"n": cfg.n, "d": cfg.d, "window": cfg.window, "summary": counts,
               "reports": [r.to_json() for r in reports]}, cfg.json)
    return 1 if total_fail else 0


# --- act --------------------------------------------------------------------

_TOKEN = re.compile(r"^\s*(E|F|Bn|K|Iv|Theta)\s*\(([^()]*)\)\s*$")


def parse_word(word: str, n: int) -> list[tuple]:
    """Tokens in written order; application runs right to left."""
    toks = [t for t in word.split(";") if t.strip()]
    if not toks:
        raise UsageError("empty word")
    out = []
    for t in toks:
        m = _TOKEN.match(t)
        if not m:
            raise UsageError(f"cannot parse generator {t.strip()!r}")
        name, body = m.group(1), m.group(2)
        parts = [p.strip() for p in body.split(",") if p.strip()]
        if name == "Iv":
            digits = parts if len(parts) > 1 else list(parts[0]) if parts else []
            try:
                out.append(("Iv", tuple(int(x) for x in digits)))
            except ValueError as e:
                raise UsageError(f"bad grade in {t.strip()!r}") from e
            continue
        try:
            nums = [n if p == "n" else int(p) for p in parts]
        except ValueError as e:
            raise UsageError(f"bad integer in {t.strip()!r}") from e
        arity = {"E": 2, "F": 2, "Theta": 2, "Bn": 1, "K": 1}[name]
        if len(nums) != arity:
            raise UsageError(f"{name} takes {arity} argument(s)")
        idx = nums[0] if name != "Bn" else None
        if name in ("E", "F") and not 1 <= idx <= n - 1:
            raise UsageError(f"{name} index must lie in 1..{n - 1}")
        if name in ("K", "Theta") and not 1 <= idx <= 2 * n - 1:
            raise UsageError(f"{name} node must lie in 1..{2 * n - 1}")
        out.append((name, *nums))
    return out


def apply_word(tokens: list[tuple], f: ModuleElement) -> ModuleElement:
    for tok in reversed(tokens):
        name = tok[0]
        if name == "E":
            f = apply_E(tok[1], tok[2], f)
        elif name == "F":
            f = apply_F(tok[1], tok[2], f)
        elif name == "Bn":
            f = apply_Bn(tok[1], f)
        elif name == "K":
            f = apply_K(tok[1], f)
        elif name == "Theta":
            f = apply_Theta(tok[1], tok[2], f)
        else:
            v = Composition(tok[1])
            if len(v) != 2 * f.n or v.d != f.d:
                raise UsageError(f"Iv grade {tuple(v)} does not fit n={f.n}, d={f.d}")
            f = apply_Iv(v, f)
    return f


def _parse_composition(text: str) -> Composition:
    try:
        return Composition(int(c) for c in re.findall(r"-?\d+", text))
    except ValueError as e:
        raise UsageError(str(e)) from e


def _load_element(args, n: int, d: int) -> ModuleElement:
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read input element: {e}") from e
        return ModuleElement.from_json(data, n, d)
    if args.grade:
        v = _parse_composition(args.grade)
        if len(v) != 2 * n or v.d != d:
            raise UsageError(f"grade {tuple(v)} does not fit n={n}, d={d}")
        return ModuleElement.single(v, RatFun(1, d=d))
    raise UsageError("act needs --input or --grade")


def cmd_act(args) -> int:
    n, d = args.n, args.d
    if n < 1 or d < 1:
        raise UsageError("n and d must be positive")
    tokens = parse_word(args.word, n)
    try:
        f = _load_element(args, n, d)
    except (KeyError, ValueError) as e:
        raise UsageError(f"malformed input element: {e}") from e
    out = apply_word(tokens, f)
    if out.is_zero() and not f.is_zero():
        print("warning: result is empty (no grade of the input matches the word)", file=sys.stderr)
    data = {"n": n, "d": d, **out.to_json()}
    data["text"] = {"".join(map(str, v)): str(g) for v, g in out.items()}
    print(_emit(data, args.json))
    return 0


# --- orbits -----------------------------------------------------------------


def _load_matrix(path: str) -> ThetaMatrix:
    try:
        data = json.loads(Path(path).read_text())
        return ThetaMatrix(data) if isinstance(data, list) else ThetaMatrix.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"invalid matrix {path}: {e}") from e


def cmd_orbits(args) -> int:
    if args.sub == "order":
        A, B = _load_matrix(args.A), _load_matrix(args.B)
        print(json.dumps({"leq": bruhat_leq(A, B)}))
        return 0
    if args.sub == "compose":
        A, B = _load_matrix(args.A), _load_matrix(args.B)
        if A.N != B.N or ro_co(A)[1] != ro_co(B)[0]:
            raise UsageError("co(A) must equal ro(B)")
        C = compose(A, B)
        closed = compose_closed_form(A, B)
        res = {"result": C.to_json()}
        ok = True
        if closed is not None:
            brute = compose_brute(A, B)
            ok = brute == closed
            res["closed_form_agrees"] = ok
        print(_emit(res, args.json))
        return 0 if ok else 1
    if args.sub == "decompose":
        C = _load_matrix(args.C)
        factors = decompose(C)
        print(_emit({"ell": ell(C), "factors": [{"matrix": F.to_json(), "ell": ell(F)} for F in factors]}, args.json))
        return 0
    if args.n < 1 or args.d < 0:
        raise UsageError("n must be positive and d nonnegative")
    mats = enum_matrices(args.n, args.d)
    print(_emit([M.to_json() for M in mats], args.json))
    return 0


# --- theta ------------------------------------------------------------------


def cmd_theta(args) -> int:
    v = _parse_composition(args.v)
    n, d = v.n, v.d
    if not 1 <= args.i <= 2 * n - 1:
        raise UsageError(f"node must lie in 1..{2 * n - 1}")
    if args.kmax < 0:
        raise UsageError("kmax must be nonnegative")
    K = args.kmax
    rows = []
    ok = True
    if args.i == n:
        qmq = RatFun(XLaurent.qpow(1, d)) - RatFun(XLaurent.qpow(-1, d))
        chk = [theta_check_coeff(v, k) * qmq for k in range(K + 1)]
        lhs = theta_orig_series(v, K)
        rhs = series_mul(th2_factor(n, d, K), chk, K)
    for k in range(K + 1):
        row = {"k": k, "theta": theta_coeff(args.i, v, k).to_json()}
        if args.i == n:
            res = lhs[k] - rhs[k]
            ok = ok and res.is_zero()
            row["theta_orig"] = (lhs[k] / qmq).to_json()
            row["theta_check"] = theta_check_coeff(v, k).to_json()
            row["residual"] = res.to_json()
        rows.append(row)
    print(_emit({"i": args.i, "v": list(v), "rows": rows}, args.json))
    return 0 if ok else 1


# --- oracle -----------------------------------------------------------------


def cmd_oracle(args) -> int:
    cfg = _config_from(args)
    n, d = cfg.n, cfg.d
    testset = spanning_set(n, d, cfg.exp_lo, cfg.exp_hi, cfg.support)
    reports = []
    for v in enum_compositions(n, d):
        for kind, i in [("Bn", n)] + [(kd, i) for kd in ("E", "F") for i in range(1, n)]:
            try:
                kclass(kind, i, v, 0)
            except ValueError:
                continue
            for k in range(-2, 3):
                for label, f in testset:
                    reports.append(verify_action_oracle(kind, i, v, k, f, label))
    counts: dict = {}
    for r in reports:
        c = counts.setdefault(r.kind, {"pass": 0, "fail": 0})
        c["pass" if r.passed else "fail"] += 1
    for kind, c in sorted(counts.items()):
        print(f"{'ok  ' if not c['fail'] else 'FAIL'} {kind:<3} pass={c['pass']:<6d} fail={c['fail']}")
    failed = sum(not r.passed for r in reports)
    print(f"n={n} d={d} checks={len(reports)} failed={failed}")
    if cfg.json:
        _emit({"n": n, "d": d, "reports": [r.to_json() for r in reports]}, cfg.json)
    return 1 if failed else 0


# --- parser -----------------------------------------------------------------


def _suite_flags(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--exp-lo", dest="exp_lo", type=int)
    p.add_argument("--exp-hi", dest="exp_hi", type=int)
    p.add_argument("--support", type=int, help="max number of nonzero exponents per test monomial")
    p.add_argument("--jobs", type=int, help="worker processes (default: $IQFLAG_JOBS or 1)")
    p.add_argument("--json", help="write the full report here")
    p.add_argument("--config", help="key = value file; command-line flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iqflag", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="check the relation catalog coefficientwise")
    _suite_flags(p)
    p.add_argument("--window", type=int)
    p.add_argument("--relation", action="append", help="restrict to a tag (repeatable)")
    p.add_argument("--seed", type=int, help="add random combinations of test vectors")
    p.add_argument("--extra", type=int, help="how many random vectors to add with --seed (default 3)")
    p.add_argument("--original-forms", action="store_true",
                   help="also check BBii and Serre1 with the polynomial prefactors of the original presentation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("act", help="apply a word of generators, right to left")
    p.add_argument("--word", required=True, help='e.g. "E(1,0);Bn(2);K(3)"')
    p.add_argument("--input", help="ModuleElement JSON")
    p.add_argument("--grade", help="use the constant 1 in this grade, e.g. 1,1,1,1")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--json", help="also write the result here")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("orbits", help="orbit matrix combinatorics")
    osub = p.add_subparsers(dest="sub", required=True)
    for name, files in (("order", ("A", "B")), ("compose", ("A", "B")), ("decompose", ("C",))):
        q = osub.add_parser(name)
        for f in files:
            q.add_argument(f)
        q.add_argument("--json")
    q = osub.add_parser("enum")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--json")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("theta", help="imaginary current coefficients")
    p.add_argument("--i", type=int, required=True, help="node")
    p.add_argument("--v", required=True, help="composition, e.g. 1,1")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--json")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("oracle", help="pushforward formulas against the operators")
    _suite_flags(p)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
