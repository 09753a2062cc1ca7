"""Secrecy layer: random-padded message layouts and the zero-leakage predicate.

Against an eavesdropper that reads l1 nodes' storage and observes l2
nodes' repair downloads (l = l1 + l2 < k), the message matrix devotes
k*l of its cells to uniform random symbols and the remaining k*(k - l)
to the protected payload.

The randomization can only shield one node type at a time, and the two
orientations are transposes of each other.  Type 1 nodes store mixtures
of message-matrix *columns*, so leading random columns shield them;
Type 2 nodes store mixtures of *rows*, so shielding them needs leading
random rows instead.  A layout therefore commits to a protected type
(default: Type 1, giving the leading-random-columns matrix); observed
sets of the other type generally leak, which the leakage oracle reports
honestly.

The zero-leakage guarantee is deliberately conservative: every
eavesdropped node must belong to the protected type, and the submatrix
of that type's generator formed by the first l rows and the eavesdropped
columns must have full column rank.  Full-Vandermonde generators satisfy
the rank condition for every subset of the protected type, which is why
they are the default style for secure systems; anything outside the
predicate should be measured with the leakage oracle instead.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import BadPayloadLength, BudgetExceeded
from .field import FieldMatrix, PrimeField
from .framework import MessageMatrix, TwinConfig


def secure_capacity_twin(k: int, l1: int, l2: int) -> int:
    """Payload symbols storable with zero leakage: k * (k - l1 - l2)."""
    if l1 < 0 or l2 < 0:
        raise ValueError(f"eavesdropper counts must be nonnegative: ({l1}, {l2})")
    if l1 + l2 >= k:
        raise BudgetExceeded(f"need l1 + l2 < k, got {l1} + {l2} >= {k}")
    return k * (k - l1 - l2)


@dataclass(frozen=True)
class SecureLayout:
    """Message matrix with a random band oriented toward one node type."""

    k: int
    l1: int
    l2: int
    field: PrimeField
    seed: int
    protected_type: int
    random_symbols: np.ndarray  # length k * (l1 + l2)
    payload: np.ndarray         # length k * (k - l1 - l2)
    matrix: MessageMatrix

    @property
    def budget(self) -> int:
        return self.l1 + self.l2

    @property
    def random_cols(self) -> tuple:
        """Source coordinates (column-major over the matrix) holding randomness."""
        k, l = self.k, self.budget
        if self.protected_type == 1:
            return tuple(range(k * l))          # leading columns
        return tuple(j for j in range(k * k) if j % k < l)  # leading rows

    @property
    def payload_cols(self) -> tuple:
        random = set(self.random_cols)
        return tuple(j for j in range(self.k * self.k) if j not in random)

    def source_vector(self) -> np.ndarray:
        """Column-major flattening of the message matrix."""
        return self.matrix.flatten()

    def label(self, coord: int) -> str:
        """Label for source coordinate `coord` (0-based): r/a plus 1-based index."""
        if not 0 <= coord < self.k * self.k:
            raise ValueError(f"coordinate {coord} outside [0, {self.k * self.k})")
        return f"r{coord + 1}" if coord in set(self.random_cols) else f"a{coord + 1}"

    def to_json_dict(self) -> dict:
        return {"q": self.field.p, "k": self.k, "l1": self.l1, "l2": self.l2,
                "seed": self.seed, "protected_type": self.protected_type,
                "payload": self.payload.tolist()}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SecureLayout":
        return make_secure_layout(
            payload=doc["payload"], l1=int(doc["l1"]), l2=int(doc["l2"]),
            k=int(doc["k"]), field=PrimeField(int(doc["q"])),
            seed=int(doc["seed"]),
            protected_type=int(doc.get("protected_type", 1)))


def make_secure_layout(payload, l1: int, l2: int, k: int, field: PrimeField,
                       seed: int = 0, protected_type: int = 1) -> SecureLayout:
    """Pad a payload with k*(l1+l2) seeded uniform random symbols.

    With protected_type=1 the random symbols fill the leading l1+l2
    matrix columns column-major and the payload fills the remaining
    columns, i.e. the source vector is (r, payload).  protected_type=2
    transposes that arrangement.  With l1 = l2 = 0 both orientations
    coincide with the plain layout.
    """
    capacity = secure_capacity_twin(k, l1, l2)
    if protected_type not in (1, 2):
        raise ValueError(f"protected_type must be 1 or 2, got {protected_type}")
    vals = field.reduce(payload).ravel()
    if vals.size != capacity:
        raise BadPayloadLength(
            f"payload must hold exactly k*(k-l1-l2) = {capacity} symbols, "
            f"got {vals.size}"
        )
    rng = np.random.default_rng(seed)
    rand = field.uniform(rng, k * (l1 + l2))
    block = np.concatenate([rand, vals]).reshape((k, k), order="F")
    a1 = block if protected_type == 1 else block.T
    matrix = MessageMatrix(a1=FieldMatrix(a1, field))
    return SecureLayout(k=k, l1=l1, l2=l2, field=field, seed=int(seed),
                        protected_type=protected_type,
                        random_symbols=rand, payload=vals, matrix=matrix)


def layout_to_json(layout: SecureLayout) -> str:
    return json.dumps(layout.to_json_dict())


def layout_from_json(text: str) -> SecureLayout:
    return SecureLayout.from_json_dict(json.loads(text))


def recover_payload(layout: SecureLayout, msg: MessageMatrix) -> np.ndarray:
    """Strip the random band from a reconstructed message matrix."""
    block = msg.a1.array if layout.protected_type == 1 else msg.a1.array.T
    return block.flatten(order="F")[layout.k * layout.budget:]


class GuaranteeReason(enum.Enum):
    ALL_SAME_TYPE_WITHIN_BUDGET = "AllSameTypeWithinBudget"
    SUBMATRIX_FULL_RANK = "SubmatrixFullRank"
    NOT_GUARANTEED = "NotGuaranteed"


@dataclass(frozen=True)
class SecrecyGuarantee:
    guaranteed: bool
    reason: GuaranteeReason


def guaranteed_secure_set(config: TwinConfig, layout: SecureLayout,
                          e1_nodes, e2_nodes) -> SecrecyGuarantee:
    """Decide whether zero leakage is guaranteed for the eavesdropped sets.

    e1_nodes / e2_nodes are iterables of (type, index) pairs: storage reads
    and observed repairs.  An observed repair exposes exactly the row space
    of the repaired node's content, so both sets reduce to generator columns.
    Sufficient, not necessary: every node must belong to the layout's
    protected type and the first-l-rows generator submatrix must have full
    column rank.  Returns NotGuaranteed (never raises) outside that region.
    """
    nodes = [(int(t), int(j)) for t, j in e1_nodes] + \
            [(int(t), int(j)) for t, j in e2_nodes]
    not_guaranteed = SecrecyGuarantee(False, GuaranteeReason.NOT_GUARANTEED)
    if len(nodes) != len(set(nodes)):
        return not_guaranteed
    if len(nodes) > layout.budget:
        return not_guaranteed  # over the layout's randomization budget
    if not nodes:
        return SecrecyGuarantee(True, GuaranteeReason.ALL_SAME_TYPE_WITHIN_BUDGET)
    types = {t for t, _ in nodes}
    if len(types) != 1 or types.pop() != layout.protected_type:
        return not_guaranteed
    code = config.code_for(layout.protected_type)
    if any(not 1 <= j <= code.n for _, j in nodes):
        return not_guaranteed
    columns = [j - 1 for _, j in nodes]
    sub = FieldMatrix(code.generator.array[: layout.budget, columns], config.field)
    if sub.rank() != len(columns):
        return not_guaranteed
    reason = (GuaranteeReason.ALL_SAME_TYPE_WITHIN_BUDGET
              if code.style == "vandermonde"
              else GuaranteeReason.SUBMATRIX_FULL_RANK)
    return SecrecyGuarantee(True, reason)
