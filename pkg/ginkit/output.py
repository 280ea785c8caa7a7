"""
Rendering of computed invariants: the OutputRecord and its text, JSON, m2
and chart forms. Nothing here prints; main.py owns the console.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ginkit import config
from ginkit.algorithms import phase_segments
from ginkit.core import (
    CaseTag,
    CIParams,
    InvariantSequence,
    PhaseKind,
    PhaseTag,
    StableIdeal,
    format_generator,
    gaps,
    minimal_generators,
)

JSON_KEYS = ("params", "case", "k", "lambdas", "gaps", "phases", "generators", "checks")


@dataclass
class OutputRecord:
    params: Dict[str, int]
    case: str
    k: int
    lambdas: List[int]
    gaps: List[int]
    phases: List[str]
    generators: List[str]
    checks: Dict[str, str] = field(default_factory=dict)
    # wall-clock seconds; not part of the serialized record
    timing: Optional[float] = field(default=None, compare=False)


def build_record(
    seq: InvariantSequence,
    case: CaseTag,
    checks: Optional[Dict[str, str]] = None,
    timing: Optional[float] = None,
) -> OutputRecord:
    ideal = StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))
    return OutputRecord(
        params=seq.params.as_dict(),
        case=case.value,
        k=seq.k,
        lambdas=list(seq.lambdas),
        gaps=gaps(seq),
        phases=[p.label for p in seq.phases],
        generators=[format_generator(x, y) for x, y in minimal_generators(ideal)],
        checks=dict(checks or {}),
        timing=timing,
    )


def record_to_dict(record: OutputRecord) -> Dict[str, Any]:
    return {key: getattr(record, key) for key in JSON_KEYS}


def to_json(record: OutputRecord) -> str:
    """One JSON object on one line, keys in a fixed order."""
    return json.dumps(record_to_dict(record), ensure_ascii=False)


def from_json(text: str) -> OutputRecord:
    data = json.loads(text)
    missing = [key for key in JSON_KEYS if key not in data]
    if missing:
        raise ValueError(f"record is missing keys: {', '.join(missing)}")
    return OutputRecord(**{key: data[key] for key in JSON_KEYS})


def record_sequence(record: OutputRecord) -> InvariantSequence:
    """Rebuild the invariant sequence a record describes."""
    return InvariantSequence(
        params=CIParams(**record.params),
        lambdas=tuple(record.lambdas),
        phases=tuple(PhaseTag.parse(label) for label in record.phases),
    )


# --- text ---

def gap_line(seq: InvariantSequence) -> str:
    """Gaps comma-separated inside a phase run, runs separated by two spaces."""
    return "  ".join(",".join(str(g) for g in run) for _, run in phase_segments(seq))


def render_text(record: OutputRecord, seq: InvariantSequence) -> str:
    p = record.params
    lines = [
        f"case: {record.case}  (alpha={p['alpha']}, beta={p['beta']}, n={p['n']}, m={p['m']})",
        f"k = {record.k}",
        "lambdas: " + ", ".join(str(v) for v in record.lambdas),
        "gaps: " + (gap_line(seq) or "(none)"),
        "generators: " + ", ".join(record.generators),
    ]
    if record.checks:
        lines.append("checks: " + ", ".join(f"{name} {status}" for name, status in record.checks.items()))
    if record.timing is not None:
        lines.append(f"time: {record.timing:.3f}s")
    return "\n".join(lines)


# --- m2 ---

def ring_declaration(m: int) -> str:
    names = "x,y"
    if m == 3:
        names += ",z_3"
    elif m > 3:
        names += f",z_3..z_{m}"
    return f"R = QQ[{names}]"


def render_m2(record: OutputRecord) -> str:
    ideal = StableIdeal(k=record.k, lambdas=tuple(record.lambdas))
    gens = ", ".join(format_generator(x, y, style="m2") for x, y in minimal_generators(ideal))
    return f"{ring_declaration(record.params['m'])}; J = ideal({gens})"


# --- chart ---

def glyph(gap: int) -> str:
    return config.GLYPHS.get(gap, config.GLYPH_OTHER)


def _chart_rows(seq: InvariantSequence) -> List[Tuple[str, List[int]]]:
    """Phase segments, with runs of identical full pattern blocks merged."""
    rows: List[Tuple[str, List[int]]] = []
    segments = phase_segments(seq)
    i = 0
    while i < len(segments):
        tag, run = segments[i]
        if tag.kind is not PhaseKind.PATTERN_BLOCK:
            rows.append((tag.label, run))
            i += 1
            continue

        j = i
        while (
            j + 1 < len(segments)
            and segments[j + 1][0].kind is PhaseKind.PATTERN_BLOCK
            and segments[j + 1][1] == run
        ):
            j += 1
        count = j - i + 1
        if count == 1:
            rows.append((tag.label, run))
        else:
            first, last = tag.index, segments[j][0].index
            rows.append((f"PatternBlock[{first}..{last}] ×{count}", run))
        i = j + 1
    return rows


def render_chart(seq: InvariantSequence, case: CaseTag) -> str:
    """One glyph per gap (· = 1, : = 2, # = anything else), one line per phase segment."""
    p = seq.params
    other = p.beta - 2 * p.alpha + 2
    header = (
        f"{case.value} (alpha={p.alpha}, beta={p.beta}, n={p.n}): "
        f"k={seq.k}, {max(seq.k - 1, 0)} gaps   "
        f"{glyph(1)} = 1  {glyph(2)} = 2"
    )
    if other > 2:
        # gaps of size beta - 2*alpha + 2 only occur past the 1 and 2 glyphs
        header += f"  {config.GLYPH_OTHER} = {other}"
    segments = phase_segments(seq)
    if not segments:
        return header + "\n(no gaps: k = 1)"

    strip = " ".join("".join(glyph(g) for g in run) for _, run in segments)
    rows = _chart_rows(seq)
    width = max(len(label) for label, _ in rows)
    lines = [header, strip, ""]
    lines += [f"{label:<{width}}  {''.join(glyph(g) for g in run)}" for label, run in rows]
    return "\n".join(lines)
