"""Command-line front end.

Subcommands reproduce the computations end to end and exit nonzero on
the first failing check:

  dims          dimension table (ambient and kernel) up to --max-degree
  kernel        one KernelReport as json/csv/md
  verify-omega  the four-part certificate for the degree-6 generator
  characters    S3 characters of the kernel in degrees 6..max
  stabilize     the delta_IJ propagation certificate for --n
  psigma        structure checks of the semidirect Lie ring
  all           everything above, aggregated

Output is deterministic: no timestamps, sorted keys in JSON.  The
computation is single-threaded regardless of --threads (accepted for
interface stability); identical configurations give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import johnson, psigma3, stabilization, symmetry
from .freelie import LieElement, abc_alphabet, to_tensor
from .words import lyndon_tuples, witt_dimension

__all__ = ["RunConfig", "main", "build_parser"]


@dataclass
class RunConfig:
    command: str
    n: int = 3
    max_degree: int = 9
    degree: int | None = None
    ring: str = "z"
    format: str = "json"
    out: str | None = None
    threads: int = 1
    seed: int = 0
    verbosity: int = 0
    checks: list = field(default_factory=list)
    self_test_corrupt: bool = False
    with_divisors: bool = False

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.ring not in ("z", "q"):
            raise ValueError("ring must be z or q")
        if self.format not in ("json", "csv", "md"):
            raise ValueError("format must be json, csv or md")


def _reference_table() -> dict:
    with resources.files("mccool.data").joinpath("expected_dimensions.json").open() as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# individual commands; each returns (payload dict, ok flag)


def cmd_dims(config: RunConfig):
    ref = _reference_table()
    rows = []
    ok = True
    for k in range(1, config.max_degree + 1):
        ambient = witt_dimension(3, k)
        kernel = johnson.kernel_report(k).kernel_dim
        rows.append({"k": k, "ambient": ambient, "kernel": kernel})
        want_a = ref["ambient"].get(str(k))
        want_k = ref["kernel"].get(str(k))
        if want_a is not None and want_a != ambient:
            ok = False
        if want_k is not None and want_k != kernel:
            ok = False
    payload = {
        "command": "dims",
        "n": 3,
        "max_degree": config.max_degree,
        "rows": rows,
        "matches_reference": ok,
    }
    return payload, ok


def cmd_kernel(config: RunConfig):
    if config.n != 3:
        raise SystemExit("kernel reports are computed for n = 3 only")
    k = config.degree
    if k is None:
        raise SystemExit("kernel requires --degree")
    rep = johnson.kernel_report(k, with_divisors=config.with_divisors)
    payload = rep.to_json_dict()
    payload["command"] = "kernel"
    payload["ring"] = config.ring
    return payload, True


def cmd_verify_omega(config: RunConfig):
    om = johnson.omega()
    if config.self_test_corrupt:
        # negative control: damage the element and watch the checks fail
        alphabet = abc_alphabet()
        gens = {lab: LieElement.generator(alphabet, lab) for lab in "abc"}
        from .freelie import left_normed

        om = om + left_normed([gens[ch] for ch in "abacbc"])
    checks = []

    coeff = to_tensor(om).coefficient("ccbbaa")
    checks.append(
        {
            "id": "omega-nonzero-tensor-coefficient",
            "pass": coeff != 0,
            "detail": {"word": "ccbbaa", "coefficient": str(coeff)},
        }
    )
    tau_zero = johnson.tau_evaluate(om).is_zero()
    checks.append({"id": "tau-of-omega-vanishes", "pass": tau_zero, "detail": {}})

    rep = johnson.kernel_report(6)
    lattice_ok = rep.kernel_dim == 1 and rep.kernel_basis[0] == johnson.sign_normalize(
        johnson.omega()
    )
    checks.append(
        {
            "id": "degree6-kernel-lattice-is-generated-by-omega",
            "pass": lattice_ok,
            "detail": {"kernel_dim": rep.kernel_dim},
        }
    )
    char = symmetry.kernel_character(6)
    checks.append(
        {
            "id": "degree6-character-is-sign",
            "pass": tuple(char) == (1, -1, 1),
            "detail": {"character": list(char)},
        }
    )
    ok = all(c["pass"] for c in checks)
    return {"command": "verify-omega", "checks": checks, "pass": ok}, ok


def cmd_characters(config: RunConfig):
    ref = _reference_table()["characters"]
    out = {}
    ok = True
    top = min(config.max_degree, 9)
    for k in range(6, top + 1):
        ch = symmetry.kernel_character(k)
        out[str(k)] = {
            "character": list(ch),
            "multiplicities": dict(
                zip(("trivial", "sign", "standard"), ch.multiplicities())
            ),
        }
        if str(k) in ref and list(ch) != ref[str(k)]:
            ok = False
    payload = {
        "command": "characters",
        "max_degree": top,
        "characters": out,
        "matches_reference": ok,
    }
    return payload, ok


def cmd_stabilize(config: RunConfig):
    cert = stabilization.independence_certificate(config.n)
    payload = cert.to_json_dict()
    payload["command"] = "stabilize"
    return payload, cert.verified


def cmd_psigma(config: RunConfig):
    wanted = config.checks or ["ranks", "jacobi", "tau-kernel", "intersection"]
    rng = random.Random(config.seed)
    checks = []
    cap = min(config.max_degree, 9)
    for name in wanted:
        if name == "ranks":
            rows = {}
            ok = True
            for k in range(1, cap + 1):
                got = psigma3.sd_rank(k)
                want = 2 * witt_dimension(3, k)
                rows[str(k)] = got
                ok = ok and got == want and len(psigma3._sd_basis(k)) == got
            checks.append({"id": "ranks", "pass": ok, "detail": rows})
        elif name == "jacobi":
            ok = True
            for _ in range(60):
                du = rng.randint(1, 3)
                dv = rng.randint(1, 3)
                dw = rng.randint(1, max(1, 7 - du - dv))
                u, v, w = (_random_sd(rng, d) for d in (du, dv, dw))
                j = (
                    psigma3.sd_bracket(psigma3.sd_bracket(u, v), w)
                    + psigma3.sd_bracket(psigma3.sd_bracket(v, w), u)
                    + psigma3.sd_bracket(psigma3.sd_bracket(w, u), v)
                )
                ok = ok and j.is_zero()
            checks.append({"id": "jacobi", "pass": ok, "detail": {"samples": 60}})
        elif name == "tau-kernel":
            ok = True
            dims = {}
            top = min(cap, 7)
            for k in range(1, top + 1):
                ker = psigma3.sd_tau_kernel(k)
                expect = johnson.kernel_report(k).kernel_dim
                dims[str(k)] = len(ker)
                ok = ok and len(ker) == expect and all(u.hpart.is_zero() for u in ker)
            checks.append({"id": "tau-kernel", "pass": ok, "detail": dims})
        elif name == "intersection":
            ok = True
            dims = {}
            top = min(cap, psigma3.INTERSECTION_DEGREE_CAP)
            for k in range(1, top + 1):
                got = psigma3.intersection_kappa(k)
                dims[str(k)] = got
                ok = ok and got == johnson.kernel_report(k).kernel_dim
            checks.append({"id": "intersection", "pass": ok, "detail": dims})
        else:
            raise SystemExit(f"unknown psigma check {name!r}")
    ok = all(c["pass"] for c in checks)
    return {"command": "psigma", "checks": checks, "pass": ok}, ok


def _random_sd(rng: random.Random, degree: int):
    from .psigma3 import SDElement, c_alphabet

    words = lyndon_tuples(3, degree)
    h = {rng.choice(words): rng.randint(-2, 2) for _ in range(2)}
    g = {rng.choice(words): rng.randint(-2, 2) for _ in range(2)}
    return SDElement(
        LieElement(c_alphabet(), degree, h), LieElement(abc_alphabet(), degree, g)
    )


def cmd_all(config: RunConfig):
    reports = {}
    ok = True
    for name, fn in (
        ("dims", cmd_dims),
        ("verify_omega", cmd_verify_omega),
        ("characters", cmd_characters),
        ("stabilize", cmd_stabilize),
        ("psigma", cmd_psigma),
    ):
        payload, sub_ok = fn(config)
        reports[name] = payload
        ok = ok and sub_ok
    return {"command": "all", "reports": reports, "pass": ok}, ok


# ---------------------------------------------------------------------------
# rendering


def _render_md(payload: dict) -> str:
    cmd = payload["command"]
    if cmd == "dims":
        ks = [str(r["k"]) for r in payload["rows"]]
        amb = [str(r["ambient"]) for r in payload["rows"]]
        ker = [str(r["kernel"]) for r in payload["rows"]]
        lines = [
            "| k | " + " | ".join(ks) + " |",
            "|---" * (len(ks) + 1) + "|",
            "| dim L_k | " + " | ".join(amb) + " |",
            "| dim kernel_k | " + " | ".join(ker) + " |",
        ]
        return "\n".join(lines) + "\n"
    if cmd == "characters":
        ks = sorted(payload["characters"], key=int)
        chars = [
            "(" + ", ".join(str(x) for x in payload["characters"][k]["character"]) + ")"
            for k in ks
        ]
        lines = [
            "| k | " + " | ".join(ks) + " |",
            "|---" * (len(ks) + 1) + "|",
            "| character of kernel_k | " + " | ".join(chars) + " |",
        ]
        return "\n".join(lines) + "\n"
    if cmd == "kernel":
        lines = [
            f"degree {payload['degree']}: domain {payload['domain_dim']}, "
            f"rank {payload['image_rank']}, kernel {payload['kernel_dim']}",
            "",
        ]
        for term in payload["basis"]:
            lines.append(
                "- "
                + " ".join(f"{t['coeff']}*[{t['word']}]" for t in term["terms"])
            )
        return "\n".join(lines) + "\n"
    return _render_json(payload)


def _render_csv(payload: dict) -> dict:
    """One csv table per logical table; returns {filename: text}."""
    cmd = payload["command"]
    if cmd == "dims":
        lines = ["k,ambient,kernel"]
        for r in payload["rows"]:
            lines.append(f"{r['k']},{r['ambient']},{r['kernel']}")
        return {"dims.csv": "\n".join(lines) + "\n"}
    if cmd == "characters":
        lines = ["k,chi_id,chi_transposition,chi_3cycle"]
        for k in sorted(payload["characters"], key=int):
            ch = payload["characters"][k]["character"]
            lines.append(f"{k},{ch[0]},{ch[1]},{ch[2]}")
        return {"characters.csv": "\n".join(lines) + "\n"}
    if cmd == "kernel":
        lines = ["degree,domain_dim,image_rank,kernel_dim"]
        lines.append(
            f"{payload['degree']},{payload['domain_dim']},"
            f"{payload['image_rank']},{payload['kernel_dim']}"
        )
        return {f"kernel_{payload['degree']}.csv": "\n".join(lines) + "\n"}
    if cmd == "all":
        out = {}
        for sub in payload["reports"].values():
            out.update(_render_csv(sub))
        return out
    return {f"{cmd}.csv": _render_json(payload)}


def _render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(payload: dict, config: RunConfig) -> None:
    if config.format == "json":
        text = _render_json(payload)
        _write(text, config.out)
    elif config.format == "md":
        _write(_render_md(payload), config.out)
    else:
        tables = _render_csv(payload)
        if config.out is None:
            for name in sorted(tables):
                sys.stdout.write(f"# {name}\n{tables[name]}")
        else:
            base = Path(config.out)
            if len(tables) == 1 and not base.is_dir():
                _write(next(iter(tables.values())), config.out)
            else:
                base.mkdir(parents=True, exist_ok=True)
                for name in sorted(tables):
                    (base / name).write_text(tables[name])


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mccool",
        description="Exact computations in the graded Lie theory of basis-conjugating automorphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=False, with_degree=False):
        p.add_argument("--max-degree", type=int, default=9, dest="max_degree")
        if with_n:
            p.add_argument("--n", type=int, default=3)
        if with_degree:
            p.add_argument("--degree", type=int, required=True)
        p.add_argument("--ring", choices=("z", "q"), default="z")
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-v", "--verbose", action="count", default=0, dest="verbosity")

    common(sub.add_parser("dims", help="dimension table and reference comparison"))
    p_kernel = sub.add_parser("kernel", help="kernel report for one degree")
    common(p_kernel, with_n=True, with_degree=True)
    p_kernel.add_argument("--divisors", action="store_true", dest="with_divisors")
    p_omega = sub.add_parser("verify-omega", help="certificate for the degree-6 kernel generator")
    common(p_omega)
    p_omega.add_argument(
        "--self-test-corrupt", action="store_true", dest="self_test_corrupt",
        help="negative control: corrupt the element and expect failure",
    )
    common(sub.add_parser("characters", help="S3 characters of the kernel"))
    common(sub.add_parser("stabilize", help="propagation certificate"), with_n=True)
    p_ps = sub.add_parser("psigma", help="semidirect-product structure checks")
    common(p_ps)
    p_ps.add_argument(
        "--check",
        action="append",
        dest="checks",
        choices=("jacobi", "tau-kernel", "intersection", "ranks"),
        default=None,
    )
    common(sub.add_parser("all", help="run every check"), with_n=True)
    return parser


_COMMANDS = {
    "dims": cmd_dims,
    "kernel": cmd_kernel,
    "verify-omega": cmd_verify_omega,
    "characters": cmd_characters,
    "stabilize": cmd_stabilize,
    "psigma": cmd_psigma,
    "all": cmd_all,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            n=getattr(args, "n", 3),
            max_degree=args.max_degree,
            degree=getattr(args, "degree", None),
            ring=args.ring,
            format=args.format,
            out=args.out,
            threads=args.threads,
            seed=args.seed,
            verbosity=args.verbosity,
            checks=getattr(args, "checks", None) or [],
            self_test_corrupt=getattr(args, "self_test_corrupt", False),
            with_divisors=getattr(args, "with_divisors", False),
        )
        payload, ok = _COMMANDS[config.command](config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, config)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
