"""Command-line front end: each subcommand runs a batch of exact checks and
emits one report (a table, or a schema-versioned JSON document).

Exit codes: 0 all pass/cited, 1 some check failed, 2 usage or parse error,
3 some check was inconclusive (resource budget).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from . import heisenberg as hz
from .laurent import ParseError, compose, is_homogeneous, parse, power, pullback, render
from .linsys import BUDGETS, basepoint_free_certificate, f_poly, n3_showcase, product_monomial
from .rationalize import build_certificate, projective_tower

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# group-element enumeration caps (on n^3)
ENUMERATION_CAPS = {"small": 512, "default": 4096, "large": 32768}


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    max_deg: int | None = None
    budget: str = "default"
    fmt: str = "human"
    out: str | None = None
    method: str = "groebner"
    timestamps: bool = False
    expression: str | None = None
    action: str | None = None

    def __post_init__(self):
        if self.n is not None and self.n < 1:
            raise ValueError("--n must be >= 1")
        if self.max_deg is not None and self.max_deg < 0:
            raise ValueError("--max-deg must be >= 0")
        if self.budget not in BUDGETS:
            try:
                value = int(self.budget)
            except ValueError:
                raise ValueError(f"--budget must be small, default, large or a positive integer (got {self.budget!r})")
            if value < 1:
                raise ValueError("--budget must be positive")

    @property
    def pair_limit(self) -> int:
        return BUDGETS.get(self.budget) or int(self.budget)

    @property
    def enumeration_cap(self) -> int:
        return ENUMERATION_CAPS.get(self.budget) or int(self.budget)

    @property
    def explicit_large_budget(self) -> bool:
        return self.budget not in ("small", "default")

    def echo(self) -> dict:
        out = {"n": self.n, "budget": {"name": self.budget, "groebner_pairs": self.pair_limit,
                                       "enumeration_cap": self.enumeration_cap}}
        if self.max_deg is not None:
            out["max_deg"] = self.max_deg
        if self.command == "bpf":
            out["method"] = self.method
        if self.expression is not None:
            out["expression"] = self.expression
            out["action"] = self.action or "xi,eta"
        return out


@dataclass
class Report:
    command: str
    config: dict
    results: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    certificate: dict | None = None
    timing: dict = field(default_factory=dict)

    def add(self, name: str, status: str, witness=None):
        self.results.append({"name": name, "status": status, "witness": witness})

    def check(self, name: str, ok: bool, witness=None):
        self.add(name, "pass" if ok else "fail", witness)

    @property
    def verdict(self) -> str:
        kinds = {r["status"] for r in self.results}
        if "fail" in kinds:
            return "fail"
        if "inconclusive" in kinds:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[self.verdict]

    def to_dict(self, timestamps: bool = False) -> dict:
        doc = {
            "version": REPORT_VERSION,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "verdict": self.verdict,
            "notes": self.notes,
        }
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        if timestamps:
            doc["timing"] = dict(self.timing, generated_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
        return doc


def load_schema() -> dict:
    text = resources.files("heisrat").joinpath("schemas/report-v1.json").read_text()
    return json.loads(text)


def validate_report(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema())


def _short(witness, width: int = 72) -> str:
    if witness is None:
        return ""
    text = witness if isinstance(witness, str) else json.dumps(witness, sort_keys=True)
    return text if len(text) <= width else text[: width - 3] + "..."


def render_human(doc: dict) -> str:
    lines = [f"{doc['command']}  (n = {doc['config'].get('n')})"]
    width = max((len(r["name"]) for r in doc["results"]), default=4)
    for r in doc["results"]:
        lines.append(f"  {r['name']:<{width}}  {r['status']:<12}  {_short(r['witness'])}")
    for note in doc["notes"]:
        lines.append(f"  note: {note}")
    lines.append(f"verdict: {doc['verdict']}")
    return "\n".join(lines) + "\n"


def render_structured(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _require_n(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise ValueError(f"{cfg.command} needs --n")
    return cfg.n


def cmd_group_check(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    rep = Report(cfg.command, cfg.echo())
    if n ** 3 > cfg.enumeration_cap:
        rep.add("enumeration", "inconclusive", f"n^3 = {n ** 3} exceeds the enumeration cap {cfg.enumeration_cap}")
        return rep
    group = hz.enumerate_group(n)
    rep.check("group_order", len(group) == n ** 3, {"order": len(group), "expected": n ** 3})
    cen = hz.center(n)
    comm = hz.commutator(n)
    powers = {power(comm, k) for k in range(n)} if n > 1 else {comm}
    rep.check("center_order", len(cen) == n, {"order": len(cen)})
    rep.check("center_generated_by_commutator", set(cen) == powers,
              {"commutator_scalar": render_scalar(comm)})
    elements = [hz.HeisenbergElement(n, a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    if n <= 4:
        pairs = [(e1, e2) for e1 in elements for e2 in elements]
        scope = "exhaustive"
    else:
        act = hz.schrodinger(n)
        gens = [hz.decompose(act.xi), hz.decompose(act.eta)]
        pairs = [(e1, e2) for e1 in elements for e2 in gens]
        scope = "all elements times generators"
    bad = [(e1, e2) for e1, e2 in pairs
           if hz.realize(hz.multiply(e1, e2)) != compose(hz.realize(e1), hz.realize(e2))]
    rep.check("homomorphism", not bad, {"pairs": len(pairs), "scope": scope, "violations": len(bad)})
    noncentral = [g for g in group if not g.is_scalar()]
    multiple = [g for g in noncentral if not hz.has_simple_spectrum(g)]
    witness = {"noncentral": len(noncentral), "with_repeated_eigenvalues": len(multiple)}
    if multiple:
        g = multiple[0]
        e = hz.decompose(g)
        witness["example"] = {"element": f"omega^{e.c} xi^{e.a} eta^{e.b}", "spectrum_phases": [str(p) for p in hz.spectrum_phases(g)]}
    rep.check("simple_spectrum", not multiple, witness)
    wrong = [g for g in noncentral if _fixed_point_count(g) != n]
    rep.check("projective_fixed_points", not wrong,
              {"noncentral": len(noncentral), "without_n_fixed_points": len(wrong)})
    return rep


def _fixed_point_count(g) -> int | None:
    """Number of projective fixed points; None when the fixed locus is positive-dimensional."""
    try:
        return len(hz.fixed_points_projective(g))
    except ValueError:
        return None


def render_scalar(m) -> str:
    return m.scalars[0].render() if m.dim else "1"


def cmd_invariants(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    rep = Report(cfg.command, cfg.echo())
    table = []
    for k in range(1, n + 1):
        ch = hz.character_of_semiinvariant(f_poly(n, k).to_laurent(), n)
        ok = ch is not None and ch[0] in {k % n, -k % n} and ch[1] == 0
        table.append({"k": k, "xi_exponent": None if ch is None else ch[0],
                      "eta_exponent": None if ch is None else ch[1]})
        rep.check(f"character_f{k}", ok, table[-1])
    full = n ** 3 <= cfg.enumeration_cap and n <= 6
    if full:
        group = hz.enumerate_group(n)
    else:
        act = hz.schrodinger(n)
        group = [act.xi, act.eta]
    scope = "whole group" if full else "generators"
    members = [(f"f{k}^{n}", f_poly(n, k) ** n) for k in range(1, n + 1)]
    members.append((f"(x0...x{n - 1})^{n}", product_monomial(n) ** n))
    for name, f in members:
        lf = f.to_laurent()
        rep.check(f"invariant_{name}", all(pullback(lf, g) == lf for g in group), {"checked_against": scope})
    return rep


def cmd_molien(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    d_max = 3 * n if cfg.max_deg is None else cfg.max_deg
    rep = Report(cfg.command, cfg.echo())
    dims = hz.molien_dimensions(n, d_max)
    rep.add("molien_dimensions", "pass", dims)
    rep.check("zero_unless_n_divides_degree", all(dims[d] == 0 for d in range(d_max + 1) if d % n),
              None)
    if n <= 4:
        brute = []
        for d in range(d_max + 1):
            try:
                brute.append(hz.invariant_dimension_bruteforce(n, d, limit=cfg.enumeration_cap * 10))
            except hz.ResourceLimitError:
                rep.add("reynolds_oracle", "inconclusive", f"degree {d} exceeds the monomial limit")
                break
        else:
            rep.check("reynolds_oracle", brute == dims, brute)
    else:
        rep.notes.append("brute-force oracle comparison runs for n <= 4 only")
    return rep


def cmd_bpf(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    if n < 2:
        raise ValueError("bpf needs n >= 2")
    rep = Report(cfg.command, cfg.echo())
    max_n = 10 ** 6 if cfg.explicit_large_budget else 4
    cert = basepoint_free_certificate(n, max_pairs=cfg.pair_limit, max_n=max_n, method=cfg.method)
    for o in cert.outcomes:
        rep.add(f"{o.variable}_in_radical", o.status, o.detail)
        rep.timing[o.variable] = round(o.seconds, 4)
    return rep


def cmd_rationalize(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    if n < 2:
        raise ValueError("rationalize needs n >= 2")
    rep = Report(cfg.command, cfg.echo())
    cert = build_certificate(n)
    for step in cert.steps:
        status = {"Verified": "pass", "Cited": "cited", "Failed": "fail"}[step.status]
        rep.add(step.name, status, step.citation or sorted(k for k, v in step.checks.items() if v))
    proj = projective_tower(n)
    rep.check("projective_tower", proj.passed, proj.checks)
    rep.notes.extend(cert.discrepancies)
    rep.notes.append(f"certificate verdict: {cert.verdict}")
    if cfg.fmt == "structured":
        rep.certificate = cert.to_dict()
    return rep


def cmd_hesse(cfg: RunConfig) -> Report:
    if cfg.n not in (None, 3):
        raise ValueError("hesse is the n = 3 showcase")
    cfg.n = 3
    rep = Report(cfg.command, cfg.echo())
    show = n3_showcase(9 if cfg.max_deg is None else cfg.max_deg)
    for name, ok in show.checks.items():
        rep.check(name, ok)
    rep.add("orbits", "pass", [{"size": o["size"], "stabilizer_order": o["stabilizer_order"]}
                               for o in show.witness["orbits"]])
    rep.add("dimensions", "pass", {"molien": show.witness["molien"],
                                   "subalgebra": show.witness["subalgebra_dimensions"]})
    return rep


def _parse_action(spec: str | None, n: int):
    act = hz.schrodinger(n)
    named = {"xi": act.xi, "eta": act.eta}
    out = []
    for token in (spec or "xi,eta").split(","):
        token = token.strip()
        if token in named:
            out.append((token, named[token]))
            continue
        parts = token.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad action {token!r}: use xi, eta or a:b:c for omega^c xi^a eta^b")
        a, b, c = (int(p) for p in parts)
        out.append((token, hz.realize(hz.HeisenbergElement(n, a, b, c))))
    return out


def cmd_parse_eval(cfg: RunConfig) -> Report:
    n = _require_n(cfg)
    f = parse(cfg.expression, n, n=n)
    rep = Report(cfg.command, cfg.echo())
    rep.add("normal_form", "pass", render(f))
    deg = is_homogeneous(f)
    rep.add("homogeneous", "pass", {"homogeneous": deg is not None, "degree": deg})
    ch = hz.character_of_semiinvariant(f, n)
    rep.add("character", "pass", None if ch is None else list(ch))
    for name, g in _parse_action(cfg.action, n):
        rep.add(f"pullback_{name}", "pass", render(pullback(f, g)))
    return rep


COMMANDS = {
    "group-check": cmd_group_check,
    "invariants": cmd_invariants,
    "molien": cmd_molien,
    "bpf": cmd_bpf,
    "rationalize": cmd_rationalize,
    "hesse": cmd_hesse,
    "parse-eval": cmd_parse_eval,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--max-deg", type=int)
    common.add_argument("--budget", default="default", help="small, default, large or a positive integer")
    common.add_argument("--format", dest="fmt", choices=("human", "structured"), default="human")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timestamps", action="store_true", help="include timing data (non-deterministic)")

    parser = argparse.ArgumentParser(prog="heisrat", description="Exact checks for Heisenberg invariants.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "bpf":
            p.add_argument("--method", choices=("groebner",), default="groebner")
        if name == "parse-eval":
            p.add_argument("expression")
            p.add_argument("--action", help="comma list of xi, eta or a:b:c (omega^c xi^a eta^b)")
    return parser


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the command, return (exit code, rendered report)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), ""
    try:
        cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
        report = COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        return EXIT_USAGE, f"parse error: {exc}\n"
    except ValueError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    doc = report.to_dict(cfg.timestamps)
    validate_report(doc)
    text = render_structured(doc) if cfg.fmt == "structured" else render_human(doc)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    return report.exit_code, text


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
