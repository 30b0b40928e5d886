"""
Jobs behind the run.py commands, and their text / JSON / CSV emission.

A polynomial is emitted as

    {"n": 1, "lambda": [2], "t": "inf",
     "terms": [{"exp": [2, 0], "coeff": "1/1"}, ...]}

with terms in graded-lex order, highest degree first. The text format
prints one monomial per line as "coeff * x^a y1^b".
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from superjacobi.arith import ExtendedScalar, format_rational, parse_rational
from superjacobi.engine import si_poly, specialize_sj
from superjacobi.errors import PreconditionError
from superjacobi.laurent import LaurentPoly, format_monomial, laurent_ring
from superjacobi.partitions import Partition, classify, in_hook, partitions_in_hook, sharp_chain, tilde_c
from superjacobi.pieri import b_coeff_blowup
from superjacobi.supercharacters import chi_of, e_sch, kac_sch, l_sch
from superjacobi.verify import failures, run_suites, summarize

logger = logging.getLogger(__name__)

COMMANDS = ("compute-sj", "compute-si", "compute-sch", "verify", "table")
FORMATS = ("text", "json", "csv")


@dataclass
class JobSpec:
    command: str
    n: int
    lam: Optional[Partition] = None
    t: ExtendedScalar = field(default_factory=lambda: ExtendedScalar.parse("inf"))
    format: str = "text"
    max_size: int = 4
    seed: int = 0
    suites: List[str] = field(default_factory=lambda: ["all"])
    route: str = "formula"
    method: str = "formula"
    output: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise PreconditionError(f"unknown command '{self.command}'")
        if self.n < 1:
            raise PreconditionError(f"n must be at least 1, got {self.n}")
        if self.format not in FORMATS:
            raise PreconditionError(f"unknown format '{self.format}' (expected one of {', '.join(FORMATS)})")
        if self.format == "csv" and self.command != "table":
            raise PreconditionError("--format csv is only available for table")
        if self.lam is not None and not in_hook(self.lam, 1, self.n):
            raise PreconditionError(f"{self.lam} is not in H(1,{self.n})")
        if self.command.startswith("compute") and self.lam is None:
            raise PreconditionError(f"{self.command} needs --lambda")


@dataclass
class JobResult:
    exit_code: int
    document: str
    data: Optional[object] = None


# --- polynomial documents ------------------------------------------------------


def poly_terms(f: LaurentPoly) -> List[Dict]:
    return [{"exp": list(exponent), "coeff": format_rational(coeff)} for exponent, coeff in f.sorted_terms()]


def poly_to_json(f: LaurentPoly, lam: Partition, t: ExtendedScalar) -> Dict:
    return {"n": f.ring.n, "lambda": list(lam.parts), "t": str(t), "terms": poly_terms(f)}


def poly_from_json(document: Dict) -> LaurentPoly:
    """Inverse of poly_to_json (the polynomial part)"""
    ring = laurent_ring(int(document["n"]))
    return ring.from_terms({tuple(term["exp"]): parse_rational(term["coeff"]) for term in document["terms"]})


def poly_to_text(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    return "\n".join(format_monomial(f.ring, exponent, coeff, format_rational) for exponent, coeff in f.sorted_terms())


def _emit_poly(spec: JobSpec, title: str, f: LaurentPoly, t: ExtendedScalar) -> str:
    if spec.format == "json":
        return json.dumps(poly_to_json(f, spec.lam, t), indent=2)
    return f"{title}\n{poly_to_text(f)}"


# --- commands ------------------------------------------------------------------


def compute_sj(spec: JobSpec) -> JobResult:
    result = specialize_sj(spec.lam, spec.t, spec.n, route=spec.route)
    return JobResult(0, _emit_poly(spec, f"SJ[{spec.lam}]({spec.t}), n={spec.n}", result.poly, spec.t), result.poly)


def compute_si(spec: JobSpec) -> JobResult:
    result = si_poly(spec.lam, spec.n, method=spec.method)
    return JobResult(0, _emit_poly(spec, f"SI[{spec.lam}], n={spec.n}", result.poly, result.t), result.poly)


def compute_sch(spec: JobSpec) -> JobResult:
    chi = chi_of(spec.lam, spec.n)
    characters = {
        "E": e_sch(spec.lam, spec.n),
        "L": l_sch(spec.lam, spec.n),
        "K": kac_sch(chi, spec.n),
    }
    if spec.format == "json":
        document = {
            "n": spec.n,
            "lambda": list(spec.lam.parts),
            "chi": {"eps": chi.e, "delta": list(chi.d)},
            "sch": {name: poly_terms(f) for name, f in characters.items()},
        }
        return JobResult(0, json.dumps(document, indent=2), characters)
    sections = [f"sch {name}({spec.lam}), n={spec.n}\n{poly_to_text(f)}" for name, f in characters.items()]
    return JobResult(0, "\n\n".join(sections), characters)


def table_frame(n: int, max_size: int, t: ExtendedScalar) -> pd.DataFrame:
    """One row per lambda in H(1,n) with |lambda| <= max_size"""
    rows = []
    for lam in partitions_in_hook(max_size, n):
        diagram = classify(lam, n)
        row = {
            "lambda": str(lam),
            "class": "singular" if diagram.is_singular else "regular",
            "j": diagram.j if diagram.is_singular else None,
            "sharp_chain": "",
            "c_tilde": tilde_c(lam, n),
            "b": "",
        }
        if diagram.is_singular:
            row["sharp_chain"] = " > ".join(str(mu) for mu in sharp_chain(lam, n))
            row["b"] = str(b_coeff_blowup(lam, t, n))
        rows.append(row)
    frame = pd.DataFrame(rows, columns=["lambda", "class", "j", "sharp_chain", "c_tilde", "b"])
    frame["j"] = frame["j"].astype("Int64")
    return frame


def table(spec: JobSpec) -> JobResult:
    frame = table_frame(spec.n, spec.max_size, spec.t)
    if spec.format == "json":
        document = frame.to_json(orient="records", indent=2)
    elif spec.format == "csv":
        document = frame.to_csv(index=False)
    else:
        document = f"n={spec.n}, t={spec.t}\n" + frame.to_string(index=False)
    return JobResult(0, document, frame)


def verify(spec: JobSpec) -> JobResult:
    results = run_suites(spec.suites, spec.n, spec.max_size, spec.seed)
    summary = summarize(results)
    failing = failures(results)
    if spec.format == "json":
        document = json.dumps(
            {
                "n": spec.n,
                "max_size": spec.max_size,
                "summary": json.loads(summary.to_json(orient="records")),
                "failures": json.loads(failing.to_json(orient="records")),
            },
            indent=2,
        )
    else:
        document = summary.to_string(index=False)
        if not failing.empty:
            document += "\n\nFailing cases:\n" + failing[["suite", "case", "detail"]].to_string(index=False)
    return JobResult(1 if not failing.empty else 0, document, results)


HANDLERS = {
    "compute-sj": compute_sj,
    "compute-si": compute_si,
    "compute-sch": compute_sch,
    "verify": verify,
    "table": table,
}


def run(spec: JobSpec) -> JobResult:
    """Validate and run one job; verification failures give exit code 1"""
    spec.validate()
    logger.info("running %s (n=%d)", spec.command, spec.n)
    return HANDLERS[spec.command](spec)


def write_output(document: str, path: str, fmt: str = "text") -> Path:
    """Write an emitted document, creating parent directories"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8") as f:
        if fmt == "json":
            json.dump(json.loads(document), f, indent=2)
            f.write("\n")
        else:
            f.write(document if document.endswith("\n") else document + "\n")
    return target
