"""OpenQASM 2.0 export and a reader for the subset we emit.

The standard ``rz(l)`` is ``diag(1, exp(i l))``, so the internal
``RZ(theta) = exp(i theta) * rz(-2 theta)``.  Those phases are summed into a
comment line.  A controlled internal rotation is exactly ``crz(-2 theta)``.
"""

from __future__ import annotations

import re

from .pauli import CX, CZ, RZ, SDG, Circuit, Gate, H, S, X

_NAMES = {H: "h", S: "s", SDG: "sdg", X: "x", CX: "cx", CZ: "cz"}
_KINDS = {v: k for k, v in _NAMES.items()}
_PHASE = "// global phase: "
_ANCILLA = "// ancilla: last qubit"


def _num(v: float) -> str:
    return repr(float(v))


def emit_qasm(c: Circuit) -> str:
    phase = c.global_phase
    body = []
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind == RZ:
            name = "crz" if g.controlled else "rz"
            if not g.controlled:
                phase += g.angle
            body.append(f"{name}({_num(-2 * g.angle)}) {args};")
        else:
            body.append(f"{_NAMES[g.kind]} {args};")
    head = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"{_PHASE}{_num(phase)}",
    ]
    if c.uses_ancilla:
        head.append(_ANCILLA)
    head.append(f"qreg q[{c.n_qubits}];")
    return "\n".join(head + body) + "\n"


_LINE = re.compile(r"^(\w+)(?:\(([^)]*)\))?\s+(.+);$")
_QUBIT = re.compile(r"^q\[(\d+)\]$")


class QasmError(ValueError):
    pass


def parse_qasm(text: str) -> Circuit:
    """Read back a circuit written by :func:`emit_qasm` (strict grammar)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or lines[0] != "OPENQASM 2.0;" or lines[1] != 'include "qelib1.inc";':
        raise QasmError("missing OpenQASM 2.0 header")
    phase = 0.0
    ancilla = False
    n = None
    gates: list[Gate] = []
    for ln in lines[2:]:
        if ln.startswith(_PHASE):
            phase = float(ln[len(_PHASE):])
            continue
        if ln == _ANCILLA:
            ancilla = True
            continue
        if ln.startswith("//"):
            continue
        m = re.fullmatch(r"qreg q\[(\d+)\];", ln)
        if m:
            if n is not None:
                raise QasmError("only one register is supported")
            n = int(m.group(1))
            continue
        m = _LINE.match(ln)
        if not m or n is None:
            raise QasmError(f"cannot parse {ln!r}")
        name, param, args = m.groups()
        qubits = []
        for a in args.split(","):
            qm = _QUBIT.match(a.strip())
            if not qm:
                raise QasmError(f"bad qubit argument {a!r}")
            qubits.append(int(qm.group(1)))
        if max(qubits) >= n:
            raise QasmError(f"qubit out of range in {ln!r}")
        if name in ("rz", "crz"):
            if param is None:
                raise QasmError(f"{name} needs an angle")
            theta = -float(param) / 2
            if name == "rz":
                phase -= theta
            gates.append(Gate(RZ, tuple(qubits), theta))
        elif name in _KINDS and param is None:
            gates.append(Gate(_KINDS[name], tuple(qubits)))
        else:
            raise QasmError(f"unsupported gate {name!r}")
    if n is None:
        raise QasmError("no qreg declaration")
    return Circuit(n, gates, uses_ancilla=ancilla, global_phase=phase)
