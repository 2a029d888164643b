"""
Paravectors and the creation/annihilation operator algebra of R^3.

Points are paravectors ``x0 + x``; segments, plane fragments and volumes
are products of points; every affine-style transformation is a sandwich by
an operator built from ``e_i`` and ``e_i*``.
"""
from .errors import (
    DegenerateError,
    DomainError,
    EyeOnPlaneError,
    GeometryError,
    GradeOverflowError,
    InternalConsistencyError,
    PointAtInfinityError,
    UndefinedLocationError,
)
from .exterior import (
    E1,
    E2,
    E3,
    OMEGA,
    ONE,
    Multivector,
    conjugation,
    grade_involution,
    grade_project,
    hodge,
    interior,
    reversion,
    scalar_product,
    vec,
    wedge,
)
from .operators import (
    IDENTITY,
    OpElement,
    ann,
    commutator,
    cre,
    iota,
    is_creation_only,
    op_apply,
    op_conjugation,
    op_exp_series,
    op_grade_involution,
    op_grade_project,
    op_mul,
    op_reversion,
    op_star,
    vacuum,
)
from .paravectors import (
    KParavector,
    LineRelation,
    LineSegment,
    PlaneFragment,
    Point,
    VolumeElement,
    classify_lines,
    dagger,
    line_parts,
    line_through,
    make_point,
    on_line,
    on_plane,
    plane_dual,
    plane_parts,
    plane_through,
    plucker,
    point_parts,
    pv_product,
    tetra_volume,
)
from .transforms import (
    PerspectiveCamera,
    Projection,
    Transform,
    apply,
    compose,
    cotranslate,
    frame_from,
    hyperbolic_rotation,
    perspective_project,
    pseudo_perspective,
    reflection,
    rotation,
    scale_along,
    shear,
    translation,
)

__version__ = "0.1.0"
