"""Per-q bundle of the field, cubic, group and orbit engine"""

from dataclasses import dataclass
from functools import lru_cache

from .cubic import CubicCtx
from .gfq import FieldCtx, make_field
from .group import ProjectivityGroup
from .orbits import OrbitEngine


@dataclass(frozen=True)
class GeometryContext:
    q: int
    field: FieldCtx
    cubic: CubicCtx
    group: ProjectivityGroup
    engine: OrbitEngine


def build_context(field: FieldCtx) -> GeometryContext:
    cubic = CubicCtx(field)
    group = ProjectivityGroup(field)
    return GeometryContext(field.q, field, cubic, group, OrbitEngine(group, cubic))


@lru_cache(maxsize=8)
def get_context(q: int) -> GeometryContext:
    """Shared context for q; built once per process"""
    return build_context(make_field(q))
