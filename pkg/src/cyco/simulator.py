"""Dense statevector simulation for small circuits.

Used to check that a rescheduled circuit still implements the original
unitary: per-qubit gate order is preserved by construction, so the two gate
sequences must produce the same state up to global phase.

Convention: basis index bit q is qubit q (qubit 0 is the least significant
bit). Multi-qubit gate matrices act on the listed qubits with the first
listed qubit as the most significant index bit.
"""

from __future__ import annotations

import ast
import math

import numpy as np

from .circuit import Circuit, GateInstance
from .errors import BadInput, UnknownGate

MAX_SIM_QUBITS = 20

_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}
_NAMES = {"pi": math.pi, "e": math.e, "tau": math.tau}


def _eval_node(node: ast.AST) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(
        node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
    ):
        a, b = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        return a**b
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise BadInput(f"cannot evaluate parameter expression: {ast.dump(node)}")


def eval_params(text: str | None) -> tuple[float, ...]:
    """Evaluate a comma-separated arithmetic parameter list like 'pi/2,0.3'."""
    if text is None or not text.strip():
        return ()
    try:
        tree = ast.parse(f"({text},)", mode="eval").body
    except SyntaxError as exc:
        raise BadInput(f"bad parameter expression '{text}'") from exc
    assert isinstance(tree, ast.Tuple)
    return tuple(_eval_node(el) for el in tree.elts)


_SQ2 = 1 / math.sqrt(2)

_FIXED_1Q: dict[str, np.ndarray] = {
    "id": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1, -1]).astype(complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2,
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, np.exp(1j * math.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * math.pi / 4)]),
    "sx": np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2,
    "sxdg": np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]]) / 2,
}
_FIXED_1Q["physicalz"] = _FIXED_1Q["z"]
_FIXED_1Q["virtualz"] = _FIXED_1Q["z"]

_FIXED_2Q: dict[str, np.ndarray] = {
    "cx": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "cy": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]]),
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
    "swap": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
    "iswap": np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]]),
    "siswap": np.array(
        [[1, 0, 0, 0], [0, _SQ2, 1j * _SQ2, 0], [0, 1j * _SQ2, _SQ2, 0], [0, 0, 0, 1]]
    ),
    "ecr": np.array(
        [[0, 1, 0, 1j], [1, 0, -1j, 0], [0, 1j, 0, 1], [-1j, 0, 1, 0]]
    )
    * _SQ2,
    "sycamore": np.array(
        [
            [1, 0, 0, 0],
            [0, 0, -1j, 0],
            [0, -1j, 0, 0],
            [0, 0, 0, np.exp(-1j * math.pi / 6)],
        ]
    ),
}
_FIXED_2Q["ch"] = np.block(
    [[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), _FIXED_1Q["h"]]]
).astype(complex)


def _rx(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _ry(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(t: float) -> np.ndarray:
    return np.diag([np.exp(-1j * t / 2), np.exp(1j * t / 2)])


def _phase(t: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * t)])


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]]
    )


def _phasedxz(x: float, z: float, a: float) -> np.ndarray:
    """Z^z Z^a X^x Z^-a with exponents in half-turns."""
    xpow = np.exp(1j * math.pi * x / 2) * _rx(math.pi * x)
    return _phase(math.pi * z) @ _phase(math.pi * a) @ xpow @ _phase(-math.pi * a)


def _controlled(u: np.ndarray) -> np.ndarray:
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = u
    return out


def _two_angle(kind: str, t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    if kind == "rzz":
        p, m = np.exp(-1j * t / 2), np.exp(1j * t / 2)
        return np.diag([p, m, m, p])
    if kind == "rxx":
        return np.array(
            [[c, 0, 0, -1j * s], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [-1j * s, 0, 0, c]]
        )
    if kind == "ryy":
        return np.array(
            [[c, 0, 0, 1j * s], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [1j * s, 0, 0, c]]
        )
    raise UnknownGate(f"no simulation model for '{kind}'")


def gate_matrix(g: GateInstance) -> np.ndarray:
    """Unitary matrix for a gate instance, parameters evaluated."""
    kind = g.kind.name
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    if kind in _FIXED_2Q:
        return _FIXED_2Q[kind]
    p = eval_params(g.param)
    try:
        if kind == "rx":
            return _rx(*p)
        if kind == "ry":
            return _ry(*p)
        if kind == "rz":
            return _rz(*p)
        if kind in ("p", "u1"):
            return _phase(*p)
        if kind == "u2":
            return _u3(math.pi / 2, *p)
        if kind == "u3":
            return _u3(*p)
        if kind == "phasedxz":
            return _phasedxz(*p)
        if kind in ("rzz", "rxx", "ryy"):
            return _two_angle(kind, *p)
        if kind == "crx":
            return _controlled(_rx(*p))
        if kind == "cry":
            return _controlled(_ry(*p))
        if kind == "crz":
            return _controlled(_rz(*p))
        if kind in ("cp", "cu1"):
            return _controlled(_phase(*p))
    except TypeError as exc:
        raise BadInput(f"gate '{kind}' got wrong parameter count {p}") from exc
    raise UnknownGate(f"no simulation model for '{kind}'")


def _apply(psi: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    k = len(qubits)
    axes = tuple(n - 1 - q for q in qubits)
    u = u.reshape((2,) * (2 * k))
    psi = np.tensordot(u, psi, axes=(tuple(range(k, 2 * k)), axes))
    return np.moveaxis(psi, tuple(range(k)), axes)


def statevector(c: Circuit, order: tuple[GateInstance, ...] | None = None) -> np.ndarray:
    """Statevector after applying the gates (program order by default)."""
    n = c.num_qubits
    if n > MAX_SIM_QUBITS:
        raise BadInput(f"refusing to simulate {n} qubits (limit {MAX_SIM_QUBITS})")
    psi = np.zeros((2,) * n, dtype=complex) if n else np.ones((), dtype=complex)
    if n:
        psi[(0,) * n] = 1.0
    for g in order if order is not None else c.gates:
        psi = _apply(psi, gate_matrix(g), g.qubits, n)
    return psi.reshape(-1)


def probabilities(c: Circuit, order: tuple[GateInstance, ...] | None = None) -> dict[int, float]:
    """Measurement distribution over basis states, zeros dropped."""
    amps = statevector(c, order)
    probs = np.abs(amps) ** 2
    return {int(i): float(p) for i, p in enumerate(probs) if p > 1e-12}


def states_equivalent(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True when the states agree up to global phase."""
    if a.shape != b.shape:
        return False
    return abs(abs(np.vdot(a, b)) - 1.0) <= tol
