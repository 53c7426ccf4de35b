"""One-sample two-tailed Student's t-test at the 99% level."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    df: int
    p_value: float
    significant_at_99: bool
    sample_mean: float
    sample_sd: float

    def to_dict(self) -> dict:
        # inf t-statistics (zero-variance samples) are not valid JSON numbers
        t = self.t_stat if math.isfinite(self.t_stat) else repr(self.t_stat)
        return {
            "t_stat": t,
            "df": self.df,
            "p_value": self.p_value,
            "significant_at_99": self.significant_at_99,
            "sample_mean": self.sample_mean,
            "sample_sd": self.sample_sd,
        }


def student_t_cdf(t: float, df: int) -> float:
    """CDF of Student's t via the regularized incomplete beta function."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if t == 0.0:
        return 0.5
    tail = 0.5 * float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    return 1.0 - tail if t > 0 else tail


def one_sample_t_test(samples: Sequence[float], hypothesized_mean: float) -> TTestResult:
    """Two-tailed test of the sample mean against a hypothesized value.

    Zero-variance samples are decided directly: p=1 when the common value
    equals the hypothesized mean, p=0 otherwise.
    """
    values = np.asarray(samples, dtype=float)
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    mean = float(values.mean())
    sd = float(values.std(ddof=1))
    df = n - 1
    if sd == 0.0:
        if mean == hypothesized_mean:
            return TTestResult(0.0, df, 1.0, False, mean, 0.0)
        t = math.inf if mean > hypothesized_mean else -math.inf
        return TTestResult(t, df, 0.0, True, mean, 0.0)
    t = (mean - hypothesized_mean) / (sd / math.sqrt(n))
    p = 2.0 * (1.0 - student_t_cdf(abs(t), df))
    return TTestResult(t, df, p, p < 0.01, mean, sd)
