import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from utils.bitstrings import head, tail, to_int
from utils.formatters import format_phase

logger = logging.getLogger(__name__)

BlockSequence = Tuple[str, ...]


@dataclass(frozen=True)
class StitchedCandidate:
    b_hat: str
    y_hat: int
    phi_hat: Fraction

    @classmethod
    def from_bits(cls, b_hat: str) -> "StitchedCandidate":
        y_hat = to_int(b_hat)
        return cls(b_hat=b_hat, y_hat=y_hat, phi_hat=Fraction(y_hat, 1 << len(b_hat)))

    def __str__(self) -> str:
        return f"{self.b_hat} (y={self.y_hat}, phi={format_phase(self.phi_hat)})"


def carry_bit(s_right: str, t: int) -> int:
    """Bit at left-origin position t of the right block"""
    if not 0 <= t < len(s_right):
        raise ValueError(f"carry position {t} outside a {len(s_right)}-bit block")
    return int(s_right[t])


def consistent(s_left: str, s_right: str, t: int) -> bool:
    """(tail(s_left, t) - c) mod 2^t == head(s_right, t)"""
    if t == 0:
        return True
    c = carry_bit(s_right, t)
    return (to_int(tail(s_left, t)) - c) % (1 << t) == to_int(head(s_right, t))


def concatenate(sequence: Sequence[str], m: Sequence[int], t: Sequence[int]) -> str:
    """head(s_1, m_1 - t_2) | ... | head(s_{B-1}, m_{B-1} - t_B) | s_B"""
    last = len(sequence) - 1
    parts = [head(s, m[i] - t[i + 1]) for i, s in enumerate(sequence[:last])]
    parts.append(sequence[last])
    return "".join(parts)


def integrate_sequences(
    S: Sequence[Sequence[str]], t: Sequence[int], max_combos: int
) -> List[BlockSequence]:
    """Right-to-left extension of consistent block sequences, pruned at max_combos"""
    B = len(S)
    sequences: List[BlockSequence] = [(s_B,) for s_B in S[B - 1]]

    for ell in range(B - 2, -1, -1):
        overlap = t[ell + 1]
        extended: List[BlockSequence] = []
        for sequence in sequences:
            s_right = sequence[0]
            for s_left in S[ell]:
                if consistent(s_left, s_right, overlap):
                    extended.append((s_left,) + sequence)
                    if len(extended) >= max_combos:
                        break
            if len(extended) >= max_combos:
                break
        sequences = extended
        logger.debug(f"Block {ell + 1}: {len(sequences)} consistent sequences")
        if not sequences:
            logger.warning(f"No consistent sequence survives at block {ell + 1}")
            break

    return sequences


def integrate_and_stitch(
    S: Sequence[Sequence[str]], m: Sequence[int], t: Sequence[int], max_combos: int
) -> List[StitchedCandidate]:
    """Stitched candidates in insertion order, unique on the bitstring"""
    if len(S) != len(m) or len(m) != len(t):
        raise ValueError(f"got {len(S)} candidate sets for {len(m)} blocks and {len(t)} overlaps")
    if max_combos < 1:
        raise ValueError(f"max_combos must be >= 1, got {max_combos}")

    sequences = integrate_sequences(S, t, max_combos)
    if not sequences:
        return []

    stitched: List[StitchedCandidate] = []
    seen = set()
    for sequence in sequences:
        b_hat = concatenate(sequence, m, t)
        if b_hat in seen:
            continue
        seen.add(b_hat)
        stitched.append(StitchedCandidate.from_bits(b_hat))

    logger.info(f"Stitched {len(stitched)} unique candidates from {len(sequences)} sequences")
    return stitched
