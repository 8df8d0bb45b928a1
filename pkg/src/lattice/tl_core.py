"""
Temperley-Lieb generators and their algebraic checks.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from ..exceptions import ParameterError
from .params import ModelParams
from .representations import (
    RsosRepresentation,
    SectorOperator,
    SpinRepresentation,
    operator_norm,
)

logger = logging.getLogger(__name__)


def build_e_spin(j: int, N: int, params: ModelParams, sector: Optional[int] = 0) -> SectorOperator:
    """
    Spin-1/2 generator e_j on bond (j, j+1), periodic, restricted to an Sz sector.

    An empty sector gives a 0x0 operator and a logged warning.
    """
    if not 1 <= j <= 2 * N:
        raise ParameterError(f"site index {j} outside 1..{2 * N}")
    return SpinRepresentation(N, params, sector).generator(j)


def build_e_rsos(j: int, N: int, p: int) -> SectorOperator:
    """RSOS generator e_j acting on the height h_j of closed paths."""
    if not 1 <= j <= 2 * N:
        raise ParameterError(f"site index {j} outside 1..{2 * N}")
    return RsosRepresentation(N, p).generator(j)


@dataclass
class TLResidualReport:
    """Largest operator-norm residuals of the TL relations."""
    quadratic: float                # max ‖e_j² − √Q e_j‖
    braid: float                    # max ‖e_j e_{j±1} e_j − e_j‖
    commuting: float                # max ‖[e_j, e_k]‖, |j − k| > 1 cyclically

    @property
    def max_residual(self) -> float:
        return max(self.quadratic, self.braid, self.commuting)

    def to_dict(self) -> dict:
        return {
            "quadratic": self.quadratic,
            "braid": self.braid,
            "commuting": self.commuting,
        }


def check_tl_relations(ops: Sequence[SectorOperator], sqrtQ: float) -> TLResidualReport:
    """Evaluate all TL relations on a cyclically indexed list of generators."""
    n = len(ops)
    mats = [op.matrix for op in ops]
    quadratic = braid = commuting = 0.0
    for j in range(n):
        e = mats[j]
        quadratic = max(quadratic, operator_norm(e @ e - sqrtQ * e))
        for k in ((j + 1) % n, (j - 1) % n):
            if k == j:
                continue
            f = mats[k]
            braid = max(braid, operator_norm(e @ f @ e - e))
        for k in range(n):
            distance = min(abs(j - k), n - abs(j - k))
            if distance > 1:
                commuting = max(commuting, operator_norm(e @ mats[k] - mats[k] @ e))
    report = TLResidualReport(quadratic, braid, commuting)
    logger.debug(f"TL residuals for {n} generators: {report.to_dict()}")
    return report
