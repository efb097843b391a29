"""Text formats for codes and witnesses.

Code file::

    field p=3 h=2
    kind linear k=3 n=8
    <k lines of n element tokens>

Additive code file: same, with ``kind additive k=<k> h-rows=<kh> n=<n>``
followed by kh lines of n tokens, or with ``expanded=true`` kh lines of nh
integers over GF(p) (h consecutive integers per symbol, coefficient of 1 first).

Witness file (the field comes from the codes it is used with)::

    witness kind=general|semilinear|additive n=<n>
    alpha: <n 1-based image positions>
    sigma<i>: <q tokens>       general: images of the elements in encoding order
    t=<t>                      semilinear
    lambda: <n tokens>
    c<i>: <h tokens>           additive: coefficients of x, x^p, ..., x^(p^(h-1))

Blank lines and text after ``#`` are ignored.  Errors carry line numbers.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .additive import AdditiveCode
from .codes import LinearCode
from .equivalence.witnesses import AdditiveWitness, GeneralWitness, SemiLinearWitness
from .errors import ParseError
from .field import FieldSpec, LinearizedMap, field_make


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _keyvals(line: str, keyword: str, no: int) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != keyword:
        raise ParseError(f"expected a '{keyword}' line, got {line!r}", no)
    kv = {}
    for tok in parts[1:]:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", no)
        key, val = tok.split("=", 1)
        kv[key] = val
    return kv


def _int(kv: dict, key: str, no: int) -> int:
    if key not in kv:
        raise ParseError(f"missing {key}=", no)
    try:
        return int(kv[key])
    except ValueError:
        raise ParseError(f"{key}={kv[key]!r} is not an integer", no) from None


def _tokens(field: FieldSpec, toks: list[str], no: int) -> list[int]:
    try:
        return [field.parse(t) for t in toks]
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


def _field_line(line: str, no: int) -> FieldSpec:
    kv = _keyvals(line, "field", no)
    p, h = _int(kv, "p", no), _int(kv, "h", no)
    try:
        return field_make(p, h)
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


# -- codes ------------------------------------------------------------------


def parse_code(text: str) -> LinearCode | AdditiveCode:
    lines = _lines(text)
    if len(lines) < 2:
        raise ParseError("code file needs a field line and a kind line", lines[0][0] if lines else 1)
    f = _field_line(*reversed(lines[0]))
    no, line = lines[1]
    kind = line.split()[1] if len(line.split()) > 1 else ""
    kv = _keyvals(line.replace(f"kind {kind}", "kind", 1), "kind", no)
    n = _int(kv, "n", no)
    if kind == "linear":
        rows = _int(kv, "k", no)
        width = n
    elif kind == "additive":
        _int(kv, "k", no)
        rows = _int(kv, "h-rows", no)
        expanded = kv.get("expanded", "false") == "true"
        width = n * f.h if expanded else n
    else:
        raise ParseError(f"unknown code kind {kind!r}", no)
    body = lines[2:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} matrix rows, found {len(body)}", body[-1][0] if body else no)
    mat = []
    for rno, rline in body:
        toks = rline.split()
        if len(toks) != width:
            raise ParseError(f"expected {width} entries, found {len(toks)}", rno)
        if kind == "additive" and expanded:
            try:
                vals = [int(t) for t in toks]
            except ValueError:
                raise ParseError("expanded rows hold integers over the prime field", rno) from None
            if any(not 0 <= v < f.p for v in vals):
                raise ParseError(f"entry outside GF({f.p})", rno)
            mat.append(vals)
        else:
            mat.append(_tokens(f, toks, rno))
    try:
        if kind == "linear":
            code = LinearCode(f, np.array(mat))
            if code.k != _int(kv, "k", no):
                raise ParseError("k does not match the number of rows", no)
            return code
        if expanded:
            return AdditiveCode.from_expanded(f, np.array(mat))
        return AdditiveCode(f, np.array(mat))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


def format_code(code) -> str:
    f = code.field
    out = [f"field p={f.p} h={f.h}"]
    if isinstance(code, LinearCode):
        out.append(f"kind linear k={code.k} n={code.n}")
        rows = code.generator
    else:
        out.append(f"kind additive k={code.rank // f.h} h-rows={code.num_gens} n={code.n}")
        rows = code.gens
    out.extend(" ".join(f.format(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"


def read_code(path) -> LinearCode | AdditiveCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_code(text)


# -- witnesses --------------------------------------------------------------


def format_witness(w) -> str:
    f = w.field
    if isinstance(w, SemiLinearWitness):
        kind = "semilinear"
    elif isinstance(w, AdditiveWitness):
        kind = "additive"
    else:
        kind = "general"
    out = [f"witness kind={kind} n={w.n}", "alpha: " + " ".join(str(a + 1) for a in w.alpha)]
    if kind == "general":
        for i, row in enumerate(w.tables(), start=1):
            out.append(f"sigma{i}: " + " ".join(f.format(x) for x in row))
    elif kind == "semilinear":
        out.append(f"t={w.t}")
        out.append("lambda: " + " ".join(f.format(x) for x in w.lambdas))
    else:
        for i, m in enumerate(w.maps, start=1):
            out.append(f"c{i}: " + " ".join(f.format(x) for x in m.coeffs))
    return "\n".join(out) + "\n"


def _labelled(line: str, label: str, no: int) -> list[str]:
    m = re.fullmatch(rf"{label}:\s*(.*)", line)
    if not m:
        raise ParseError(f"expected '{label}:' line, got {line!r}", no)
    return m.group(1).split()


def parse_witness(text: str, field: FieldSpec):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty witness file", 1)
    no, line = lines[0]
    kv = _keyvals(line, "witness", no)
    kind = kv.get("kind")
    n = _int(kv, "n", no)
    if len(lines) < 2:
        raise ParseError("missing alpha line", no)
    ano, aline = lines[1]
    toks = _labelled(aline, "alpha", ano)
    try:
        alpha = [int(t) - 1 for t in toks]
    except ValueError:
        raise ParseError("alpha entries must be integers", ano) from None
    if sorted(alpha) != list(range(n)):
        raise ParseError(f"alpha is not a permutation of 1..{n}", ano)
    body = lines[2:]
    try:
        if kind == "general":
            if len(body) != n:
                raise ParseError(f"expected {n} sigma lines, found {len(body)}", body[-1][0] if body else ano)
            tabs = []
            for i, (bno, bline) in enumerate(body, start=1):
                vals = _tokens(field, _labelled(bline, f"sigma{i}", bno), bno)
                if len(vals) != field.q:
                    raise ParseError(f"sigma{i} needs {field.q} entries", bno)
                tabs.append(vals)
            return GeneralWitness(field, tuple(alpha), np.array(tabs))
        if kind == "semilinear":
            if len(body) != 2:
                raise ParseError("semilinear witness needs a t= line and a lambda line", ano)
            tno, tline = body[0]
            m = re.fullmatch(r"t=(\d+)", tline)
            if not m:
                raise ParseError(f"expected t=<int>, got {tline!r}", tno)
            lno, lline = body[1]
            lam = _tokens(field, _labelled(lline, "lambda", lno), lno)
            if len(lam) != n:
                raise ParseError(f"lambda needs {n} entries", lno)
            return SemiLinearWitness(field, tuple(alpha), tuple(lam), int(m.group(1)))
        if kind == "additive":
            if len(body) != n:
                raise ParseError(f"expected {n} coefficient lines, found {len(body)}", body[-1][0] if body else ano)
            maps = []
            for i, (bno, bline) in enumerate(body, start=1):
                cs = _tokens(field, _labelled(bline, f"c{i}", bno), bno)
                if len(cs) != field.h:
                    raise ParseError(f"c{i} needs {field.h} coefficients", bno)
                maps.append(LinearizedMap(field, tuple(cs)))
            return AdditiveWitness(field, tuple(alpha), tuple(maps))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), no) from None
    raise ParseError(f"unknown witness kind {kind!r}", no)


def read_witness(path, field: FieldSpec):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_witness(text, field)
