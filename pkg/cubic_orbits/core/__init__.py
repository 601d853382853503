from .context import GeometryContext, build_context, get_context
from .cubic import INF, CubicCtx, LineClass, LineTag
from .gfq import FieldCtx, make_field
from .group import GL2Rep, GroupId, Projectivity, ProjectivityGroup
from .orbits import OrbitCensus, OrbitEngine, OrbitResult
