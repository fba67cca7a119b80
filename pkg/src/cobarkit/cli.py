"""
Command-line entry point: ``cobar-kit {check,homology,compare,pi0-ring} INPUT``.

INPUT is a path to a JSON presentation or ``builtin:NAME``.  Output is a
JSON envelope (default) or a plain table.  Exit codes: 0 ok, 1 a check
failed (or a warning under ``--strict``), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .chain_algebra import homology, verify_complex
from .chains import coassociativity_check
from .cobar import TruncationPolicy, cobar_complex, h0_ring_presentation
from .necklace import fsq_complex, verify_phi
from .rigid import TruncationError, rigid_model, verify_psi
from .simplicial import SimplicialError, builtin_space, load, validate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
MODELS = ("cobar", "fsq", "rigid")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str
    max_degree: int = 4
    max_length: int | None = None
    model: str = "cobar"
    format: str = "json"
    seed: int = 0
    strict: bool = False
    psi_max_degree: int = 2
    psi_max_length: int | None = 4

    @property
    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(self.max_degree, self.max_length)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("max_length", "psi_max_length"):
            if d[key] is None:
                d[key] = "unbounded"
        if self.command != "compare":
            d.pop("psi_max_degree")
            d.pop("psi_max_length")
        if self.command != "homology":
            d.pop("model")
        return d


@dataclass
class Outcome:
    results: list
    warnings: list
    failed: bool = False


def load_space(spec: str):
    try:
        if spec.startswith("builtin:"):
            return builtin_space(spec[len("builtin:"):])
        K = load(spec)
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror or exc}") from exc
    except SimplicialError as exc:
        raise InputError(f"{spec}: {exc}") from exc
    return K


def _require_finite(K, policy: TruncationPolicy):
    if policy.max_length is None and K.edges():
        raise InputError(f"{K.name} has nondegenerate edges: pass --max-length")


def _truncation_warning(K, policy: TruncationPolicy) -> list[str]:
    if policy.max_length is not None and K.edges():
        return [f"results for {K.name} are truncated at word length {policy.max_length}; "
                "they are invariants of the finite quotient, not of the loop space"]
    return []


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(cfg: RunConfig, K) -> Outcome:
    out = Outcome([], [])
    report = validate(K)
    out.results.append({"check": "simplicial-identities", **report.to_dict()})
    if not report.ok:
        out.failed = True
        return out
    _require_finite(K, cfg.policy)
    coassoc = coassociativity_check(K, K.top_dim())
    out.results.append(coassoc.to_dict())
    for name, C in (("cobar", cobar_complex(K, cfg.policy)),
                    ("fsq", fsq_complex(K, cfg.policy))):
        rep = verify_complex(C)
        out.results.append({**rep.to_dict(), "model": name, "truncation": C.truncation})
        out.failed |= not rep.ok
    out.failed |= not coassoc.ok
    out.warnings += _truncation_warning(K, cfg.policy)
    return out


def _homology_of(model: str, K, cfg: RunConfig):
    """Build one degree past the window so that the top reported degree is exact."""
    window = TruncationPolicy(cfg.max_degree + 1, cfg.max_length)
    degrees = range(cfg.max_degree + 1)
    warnings = []
    if model == "cobar":
        C = cobar_complex(K, window)
    elif model == "fsq":
        C = fsq_complex(K, window)
    else:
        rm = rigid_model(K, cfg.max_degree + 1, window)
        C = rm.complex
        if rm.frontier:
            warnings.append(f"rigid model dropped {len(rm.frontier)} frontier cells beyond "
                            f"length {cfg.max_length}")
    H = homology(C, degrees)
    truncation = dict(C.truncation)
    truncation["reported_degrees"] = f"0..{cfg.max_degree}"
    return H, truncation, warnings


def cmd_homology(cfg: RunConfig, K) -> Outcome:
    out = Outcome([], [])
    _require_finite(K, cfg.policy)
    try:
        H, truncation, warnings = _homology_of(cfg.model, K, cfg)
    except TruncationError as exc:
        out.results.append({"model": cfg.model, "space": K.name, "error": str(exc)})
        out.failed = True
        return out
    out.results.append({"model": cfg.model, "space": K.name,
                        "homology": H.to_dicts(), "truncation": truncation})
    out.warnings += warnings + _truncation_warning(K, cfg.policy)
    return out


def cmd_compare(cfg: RunConfig, K) -> Outcome:
    out = Outcome([], [])
    _require_finite(K, cfg.policy)
    phi_report = verify_phi(K, cfg.policy, pairs=100, seed=cfg.seed)
    out.results.append(phi_report.to_dict())

    psi_degree = min(cfg.max_degree, cfg.psi_max_degree)
    psi_length = cfg.max_length
    if cfg.psi_max_length is not None and (psi_length is None or psi_length > cfg.psi_max_length):
        psi_length = cfg.psi_max_length
    psi_report = verify_psi(K, psi_degree, TruncationPolicy(psi_degree, psi_length),
                            pairs=20, seed=cfg.seed)
    out.results.append(psi_report.to_dict())
    if psi_report.skipped:
        out.warnings.append(f"ψ comparison skipped: {psi_report.skipped}")

    cobar_h, _, _ = _homology_of("cobar", K, cfg)
    fsq_h, fsq_trunc, _ = _homology_of("fsq", K, cfg)
    agree = cobar_h.to_dicts() == fsq_h.to_dicts()
    out.results.append({"check": "cobar-vs-fsq-homology", "ok": agree,
                        "cobar": cobar_h.to_dicts(), "fsq": fsq_h.to_dicts(),
                        "fsq_quotient": fsq_trunc.get("quotient"),
                        "degrees": f"0..{cfg.max_degree}"})
    out.results.append({"summary": {
        "phi_isomorphism": phi_report.ok,
        "psi_chain_map": None if psi_report.skipped else psi_report.chain_map,
        "psi_homology_agrees": psi_report.homology_agrees,
        "psi_product_relation": None if psi_report.skipped else psi_report.product_relation,
        "cobar_fsq_homology_agrees": agree,
    }})
    out.failed = not phi_report.ok or not agree or (not psi_report.skipped and not psi_report.ok)
    out.warnings += _truncation_warning(K, cfg.policy)
    return out


def cmd_pi0_ring(cfg: RunConfig, K) -> Outcome:
    pres = h0_ring_presentation(K)
    return Outcome([pres.to_dict()], [])


COMMANDS = {"check": cmd_check, "homology": cmd_homology,
            "compare": cmd_compare, "pi0-ring": cmd_pi0_ring}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def envelope(cfg: RunConfig, outcome: Outcome) -> dict:
    return {"tool": "cobar-kit", "version": __version__, "config": cfg.to_dict(),
            "results": outcome.results, "warnings": outcome.warnings}


def render_table(cfg: RunConfig, outcome: Outcome) -> str:
    lines = [f"cobar-kit {__version__}  {cfg.command} {cfg.input}  "
             f"N={cfg.max_degree} L={cfg.max_length or 'unbounded'}"]
    for res in outcome.results:
        if "homology" in res:
            lines.append(f"homology ({res['model']})")
            lines.append("  degree  free_rank  torsion")
            for g in res["homology"]:
                tors = ",".join(map(str, g["torsion"])) or "-"
                lines.append(f"  {g['degree']:<6}  {g['free_rank']:<9}  {tors}")
            lines.append("  truncation: " + ", ".join(f"{k}={v}" for k, v in res["truncation"].items()))
        elif "relations" in res:
            lines.append(f"H_0 presentation for {res['space']}")
            lines.append("  generators: " + (", ".join(res["generators"]) or "none"))
            if res["free"]:
                lines.append("  free (no relations)")
            for r in res["relations"]:
                lines.append(f"  [{r['simplex']}] {r['raw']}   <=>   {r['monoid']}")
        elif "summary" in res:
            for k, v in res["summary"].items():
                lines.append(f"  {k}: {v}")
        else:
            name = res.get("check", res.get("model", "result"))
            status = "ok" if res.get("ok") else ("skipped" if res.get("skipped") else "FAIL")
            extra = f" [{res['model']}]" if "model" in res and "check" in res else ""
            lines.append(f"{name}{extra}: {status}")
            if res.get("error"):
                lines.append(f"  {res['error']}")
    for w in outcome.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _length(text: str) -> int | None:
    if text.lower() in ("unbounded", "none", "inf"):
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'unbounded', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("max length must be >= 1")
    return value


def _degree(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("max degree must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobar-kit",
        description="Cobar construction, necklace models and loop-space homology of "
                    "finite reduced simplicial sets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="path to a JSON presentation, or builtin:NAME "
                                     "(sphere:n, wedge-circles:k, torus, rp2)")
        p.add_argument("--max-degree", type=_degree, default=4, help="degree bound N (default 4)")
        p.add_argument("--max-length", type=_length, default=None,
                       help="word length bound L (default unbounded; required when K has edges)")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--strict", action="store_true", help="treat warnings as failures")
        return p

    common(sub.add_parser("check", help="simplicial identities, coassociativity and d² = 0"))
    h = common(sub.add_parser("homology", help="truncated homology of one model"))
    h.add_argument("--model", choices=MODELS, default="cobar")
    c = common(sub.add_parser("compare", help="φ isomorphism, ψ comparison, cross-model homology"))
    c.add_argument("--psi-max-degree", type=_degree, default=2,
                   help="degree bound for the ψ check (default 2)")
    c.add_argument("--psi-max-length", type=_length, default=4,
                   help="length bound for the ψ check (default 4)")
    common(sub.add_parser("pi0-ring", help="generators and relations of H_0"))
    return parser


def config_from_args(args) -> RunConfig:
    kw = {k: getattr(args, k) for k in ("max_degree", "max_length", "format", "seed", "strict")}
    for k in ("model", "psi_max_degree", "psi_max_length"):
        if hasattr(args, k):
            kw[k] = getattr(args, k)
    return RunConfig(command=args.command, input=args.input, **kw)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        K = load_space(cfg.input)
        outcome = COMMANDS[cfg.command](cfg, K)
    except (InputError, ValueError) as exc:
        print(f"cobar-kit: error: {exc}", file=stderr)
        return EXIT_INPUT
    if cfg.format == "json":
        print(json.dumps(envelope(cfg, outcome), indent=2, ensure_ascii=False), file=stdout)
    else:
        print(render_table(cfg, outcome), file=stdout)
    if outcome.failed or (cfg.strict and outcome.warnings):
        return EXIT_FAIL
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
