import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

from services.stitcher import StitchedCandidate
from utils.error_handler import DomainError
from utils.numtheory import cf_denominators, gcd, mod_pow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecoveryResult:
    period: Optional[int] = None
    factor: Optional[int] = None
    source_candidate: Optional[StitchedCandidate] = None

    @property
    def found(self) -> bool:
        return self.factor is not None


def try_factor_from_period(a: int, r: int, N: int) -> Optional[int]:
    """gcd(a^(r/2) -/+ 1, N) for an even r with a^(r/2) != -1 mod N"""
    if r <= 0 or mod_pow(a, r, N) != 1:
        raise DomainError(f"{a}^{r} is not 1 mod {N}")
    if r % 2:
        return None

    half = mod_pow(a, r // 2, N)
    if half == N - 1:
        return None

    for candidate in (gcd((half - 1) % N, N), gcd((half + 1) % N, N)):
        if 1 < candidate < N:
            assert N % candidate == 0
            return candidate
    return None


def candidate_order(candidates: Iterable[StitchedCandidate]) -> List[StitchedCandidate]:
    """Ascending y_hat, the all-zero phase last"""
    return sorted(candidates, key=lambda c: (c.y_hat == 0, c.y_hat))


def recover_period_and_factor(candidates: Iterable[StitchedCandidate], a: int, N: int) -> RecoveryResult:
    """First verified period that yields a nontrivial factor"""
    if gcd(a, N) != 1:
        raise DomainError(f"base {a} is not coprime to {N}")

    for candidate in candidate_order(candidates):
        denominators = cf_denominators(candidate.y_hat, 1 << len(candidate.b_hat), N)
        logger.debug(f"Candidate {candidate}: denominators {denominators}")
        for r in denominators:
            if r <= 0 or r > N:
                continue
            if mod_pow(a, r, N) != 1:
                continue
            factor = try_factor_from_period(a, r, N)
            if factor is not None:
                logger.info(f"Period r={r} from {candidate} gives factor {factor}")
                return RecoveryResult(period=r, factor=factor, source_candidate=candidate)

    logger.info(f"No non-trivial factor of {N} from {a}")
    return RecoveryResult()
