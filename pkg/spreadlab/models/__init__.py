from spreadlab.models.vertex_set import VertexSet
from spreadlab.models.graph import DoubleCoverReport, Graph, MultipartiteSpec, ProductVertex, StructureReport
from spreadlab.models.rule import Rule, RuleKind
from spreadlab.models.trace import ConversionTimes, Trace
from spreadlab.models.results import (
    BoundReport, CheckResult, Construction, FactorSide, MultipartiteAnswer, ProductKind, SolveResult, SuiteReport,
)
from spreadlab.models.run_config import BoundChoice, Command, OutputFormat, RunConfig
