"""
Configuration and result schemas for the correlation toolkit.
"""
from fractions import Fraction
from typing import Annotated, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, field_validator

# Exact rationals travel as "p/q" strings in JSON output.
Rational = Annotated[Fraction, PlainSerializer(lambda q: str(q), return_type=str, when_used="json")]


class RunConfig(BaseModel):
    """Parsed command line, validated before dispatch."""
    subcommand: str = Field(..., description="Selected subcommand")
    n: Optional[int] = Field(None, ge=0, description="Word length")
    sigma: int = Field(2, ge=2, description="Alphabet size")
    sigmas: List[int] = Field(default_factory=list, description="Alphabet sizes for table output")
    corr: Optional[str] = Field(None, description="Correlation bit string")
    method: str = Field("rec1", description="Population method")
    format: str = Field("json", description="Output format: json, csv, text or dot")
    budget: Optional[int] = Field(None, gt=0, description="Brute-force pair budget")
    threads: Optional[int] = Field(None, ge=1, description="Worker threads for brute force")
    precision_n: Optional[int] = Field(None, ge=1, description="Truncation length for asymptotic series")
    threshold_j: Optional[int] = Field(None, ge=1, description="Threshold J for the expectation bounds")
    n_max: Optional[int] = Field(None, ge=1, description="Largest length probed by ratio")
    border_range: Optional[str] = Field(None, pattern=r"^\d+:\d+$", description="Border-length range i:k")
    auto: bool = False
    gamma: bool = False
    check_jd: bool = False
    include_equal_pairs: bool = False
    dot_file: Optional[str] = None

    @field_validator('corr')
    @classmethod
    def validate_corr(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        v = v.strip()
        if v == "empty":
            return ""
        if any(ch not in "01" for ch in v):
            raise ValueError(f"correlation must be a 0/1 string, got {v!r}")
        return v

    @field_validator('sigmas')
    @classmethod
    def validate_sigmas(cls, v: List[int]) -> List[int]:
        if any(s < 2 for s in v):
            raise ValueError("alphabet size must be at least 2")
        return v


class JordanDedekindResult(BaseModel):
    """Outcome of the chain-length check, with the two extreme maximal chains."""
    holds: bool
    shortest_chain: List[str]
    longest_chain: List[str]

    @property
    def shortest_length(self) -> int:
        return len(self.shortest_chain) - 1

    @property
    def longest_length(self) -> int:
        return len(self.longest_chain) - 1


class PopulationRow(BaseModel):
    """One correlation with its population for each alphabet size."""
    correlation: str
    populations: Dict[int, int]


class BorderCountTable(BaseModel):
    """L_j for j = 0 .. n-1 plus the u = v mass L_n = sigma^n."""
    n: int = Field(..., ge=1)
    sigma: int = Field(..., ge=2)
    counts: List[int] = Field(..., description="counts[j] = number of pairs with longest border j")
    equal_pairs: int = Field(..., description="pairs with u = v")

    def range_sum(self, i: int, k: int) -> int:
        return sum(self.counts[i:k + 1])

    @property
    def total(self) -> int:
        return sum(self.counts) + self.equal_pairs


class ExpectationResult(BaseModel):
    """Expected longest-border length of a random pair, with bounds."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    sigma: int
    include_equal_pairs: bool
    value: Rational
    literal: Rational = Field(..., description="sum over j < n only")
    with_equal_pairs: Rational = Field(..., description="adds the j = n term")
    threshold_j: int
    finite_lower_bound: Rational
    asymptotic_lower_bound: float
    upper_bound: Rational


class AsymptoticEstimate(BaseModel):
    """Limit of p(s_n)/sigma^n and the ratio bounds for t = 0^(n-j) s."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    s: str
    sigma: int
    p_s: int
    precision_n: int
    c_series: Rational
    c_empirical: Rational
    gap: float
    tail_bound: float
    functional_equation_gap: float
    limit: float
    lower: float
    upper: float


class ProbeRow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    ratio: Rational
    value: float
    within_bounds: bool


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    """Pass/fail report of the cross-validation run."""
    n: int
    sigma: int
    correlations: int
    checks: List[CheckResult]
    populations: Dict[str, int]
    total: int
    passed: bool
    summary: str
