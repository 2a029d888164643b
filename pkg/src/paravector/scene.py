"""
JSON scenes of named weighted points, segments and triangles, and the
transform scripts that act on them.

A scene point ``{"pos": p, "weight": w}`` stands for the paravector
``w (1 + p)``. Weight 0 marks a point at infinity, whose ``pos`` holds the
direction vector. Numbers are written with 17 significant digits so a
save/load cycle is bit-exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import GeometryError
from .exterior import Multivector
from .paravectors import Point, line_through, plane_through
from . import transforms as tf

SCRIPT_OPS = ("reflect", "scale", "shear", "rotate", "hrotate", "translate", "cotranslate")

_PARAMS = {
    "reflect": ("n",),
    "scale": ("v", "t"),
    "shear": ("u", "v", "t"),
    "rotate": ("u", "v", "theta"),
    "hrotate": ("u", "v", "theta"),
    "translate": ("v",),
    "cotranslate": ("v",),
}


class SceneError(ValueError):
    """Malformed scene or script file."""


@dataclass
class ScenePoint:
    pos: np.ndarray
    weight: float = 1.0
    flag: str | None = None

    def paravector(self) -> Point:
        if self.weight == 0.0:
            return Point(Multivector.vector(self.pos))
        return Point(Multivector.scalar(self.weight) + Multivector.vector(self.weight * self.pos))

    @classmethod
    def from_paravector(cls, p: Point, flag: str | None = None) -> ScenePoint:
        if p.scalar == 0.0:
            return cls(p.vector, 0.0, flag)
        return cls(p.vector / p.scalar, p.scalar, flag)


@dataclass
class Scene:
    points: dict[str, ScenePoint] = field(default_factory=dict)
    segments: list[tuple[str, str]] = field(default_factory=list)
    triangles: list[tuple[str, str, str]] = field(default_factory=list)

    def validate(self) -> None:
        """Check that references resolve and referenced points are nondegenerate."""
        for kind, items in (("segment", self.segments), ("triangle", self.triangles)):
            for i, ids in enumerate(items):
                for pid in ids:
                    if pid not in self.points:
                        raise SceneError(f"{kind} {i} references unknown point id {pid!r}")
                pts = [self.points[pid] for pid in ids]
                if any(p.weight == 0.0 for p in pts):
                    continue
                build = line_through if kind == "segment" else plane_through
                try:
                    build(*(p.paravector() for p in pts))
                except GeometryError as exc:
                    raise SceneError(f"{kind} {i} {list(ids)}: {exc}") from exc

    def copy_with(self, points: dict[str, ScenePoint]) -> Scene:
        return Scene(points, list(self.segments), list(self.triangles))


def _number(x: Any, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SceneError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise SceneError(f"{where}: non-finite number")
    return x


def _vector(x: Any, where: str) -> np.ndarray:
    if not isinstance(x, list) or len(x) != 3:
        raise SceneError(f"{where}: expected a list of 3 numbers, got {x!r}")
    return np.array([_number(c, f"{where}[{i}]") for i, c in enumerate(x)])


def _reject_constant(token: str):
    raise SceneError(f"non-finite number {token}")


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SceneError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def scene_from_dict(data: Any) -> Scene:
    if not isinstance(data, dict) or not isinstance(data.get("points"), dict):
        raise SceneError("scene must be an object with a 'points' object")
    points = {}
    for pid, entry in data["points"].items():
        where = f"points.{pid}"
        if not isinstance(entry, dict) or "pos" not in entry:
            raise SceneError(f"{where}: expected an object with 'pos'")
        weight = _number(entry.get("weight", 1.0), f"{where}.weight")
        flag = entry.get("flag")
        if flag is not None and not isinstance(flag, str):
            raise SceneError(f"{where}.flag: expected a string")
        points[pid] = ScenePoint(_vector(entry["pos"], f"{where}.pos"), weight, flag)

    def ids(key: str, n: int):
        out = []
        for i, item in enumerate(data.get(key, [])):
            if not isinstance(item, list) or len(item) != n or not all(isinstance(s, str) for s in item):
                raise SceneError(f"{key}[{i}]: expected a list of {n} point ids")
            out.append(tuple(item))
        return out

    scene = Scene(points, ids("segments", 2), ids("triangles", 3))
    scene.validate()
    return scene


def load_scene(path: str | Path) -> Scene:
    path = Path(path)
    return scene_from_dict(_parse_json(path.read_text(encoding="utf-8"), str(path)))


def format_number(x: float) -> str:
    # +0.0 folds negative zero
    return format(float(x) + 0.0, ".17g")


def dumps_scene(scene: Scene) -> str:
    """Canonical JSON text: points sorted by id, 17 significant digits."""
    lines = ["{", '  "points": {']
    entries = []
    for pid in sorted(scene.points):
        p = scene.points[pid]
        pos = ", ".join(format_number(c) for c in p.pos)
        extra = f', "flag": {json.dumps(p.flag)}' if p.flag else ""
        entries.append(f'    {json.dumps(pid)}: {{"pos": [{pos}], "weight": {format_number(p.weight)}{extra}}}')
    lines.append(",\n".join(entries))
    lines.append("  },")
    for key, items, last in (("segments", scene.segments, False), ("triangles", scene.triangles, True)):
        body = ", ".join("[" + ", ".join(json.dumps(s) for s in item) + "]" for item in items)
        lines.append(f'  "{key}": [{body}]' + ("" if last else ","))
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_scene(scene: Scene, path: str | Path) -> None:
    Path(path).write_text(dumps_scene(scene), encoding="utf-8")


@dataclass
class Step:
    op: str
    params: dict

    def build(self):
        """A callable mapping a :class:`Point` to its image."""
        p = self.params
        if self.op == "reflect":
            return tf.reflection(p["n"]).__call__
        if self.op == "scale":
            return tf.scale_along(p["v"], p["t"]).__call__
        if self.op == "shear":
            return tf.shear(p["u"], p["v"], p["t"]).__call__
        if self.op == "rotate":
            return tf.rotation(p["u"], p["v"], p["theta"]).__call__
        if self.op == "hrotate":
            return tf.hyperbolic_rotation(p["u"], p["v"], p["theta"]).__call__
        if self.op == "translate":
            return tf.translation(p["v"]).__call__
        v = p["v"]
        return lambda x: tf.cotranslate(v, x)


@dataclass
class TransformScript:
    steps: list[Step]


def script_from_dict(data: Any) -> TransformScript:
    if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
        raise SceneError("script must be an object with a 'steps' list")
    steps = []
    for i, raw in enumerate(data["steps"]):
        where = f"steps[{i}]"
        if not isinstance(raw, dict) or raw.get("op") not in SCRIPT_OPS:
            raise SceneError(f"{where}: 'op' must be one of {', '.join(SCRIPT_OPS)}")
        op = raw["op"]
        given = raw.get("params", {})
        if not isinstance(given, dict):
            raise SceneError(f"{where}.params: expected an object")
        params = {}
        for name in _PARAMS[op]:
            if name not in given:
                raise SceneError(f"{where} ({op}): missing parameter {name!r}")
            value = given[name]
            if name in ("t", "theta"):
                params[name] = _number(value, f"{where}.params.{name}")
            else:
                params[name] = _vector(value, f"{where}.params.{name}").tolist()
        unknown = set(given) - set(_PARAMS[op])
        if unknown:
            raise SceneError(f"{where} ({op}): unknown parameters {sorted(unknown)}")
        steps.append(Step(op, params))
    return TransformScript(steps)


def load_script(path: str | Path) -> TransformScript:
    path = Path(path)
    return script_from_dict(_parse_json(path.read_text(encoding="utf-8"), str(path)))


def run_script(scene: Scene, script: TransformScript) -> Scene:
    """Apply every step to every point, in order.

    Raises
    ------
    SceneError
        Naming the failing step index (and point id, if any).
    """
    current = {pid: p.paravector() for pid, p in scene.points.items()}
    for i, step in enumerate(script.steps):
        try:
            fn = step.build()
        except ValueError as exc:
            raise SceneError(f"step {i} ({step.op}): {exc}") from exc
        for pid in sorted(current):
            try:
                current[pid] = fn(current[pid])
            except (ValueError, RuntimeError) as exc:
                raise SceneError(f"step {i} ({step.op}), point {pid!r}: {exc}") from exc
    return scene.copy_with({pid: ScenePoint.from_paravector(p) for pid, p in current.items()})


def project_scene(
    scene: Scene, eye, normal, c: float | None = None, pseudo: bool = False
) -> tuple[Scene, list[str]]:
    """Project every point of ``scene``.

    Perspective mode keeps the weight ``a / (n.(p - e))`` and flags points
    behind the eye. Pseudo mode first moves the eye to ``1 - n`` and then
    cotranslates by ``n``. Points that land at infinity are kept with weight
    0 and flagged; a warning naming each is returned alongside the scene.
    """
    eye = np.asarray(eye, dtype=float)
    normal = np.asarray(normal, dtype=float)
    warnings = []
    out = {}
    if pseudo:
        to_eye = tf.translation(-normal - eye)
        tf.pseudo_perspective(normal, Point(Multivector.scalar(1.0)))  # validates n
    else:
        cam = tf.PerspectiveCamera(eye, normal, c)
    for pid in sorted(scene.points):
        sp = scene.points[pid]
        if sp.weight == 0.0:
            raise SceneError(f"point {pid!r} is at infinity and cannot be projected")
        p = sp.paravector()
        if pseudo:
            image = tf.pseudo_perspective(normal, tf.apply(to_eye, p.normalized()))
            flag = None
            if image.scalar == 0.0:
                flag = "at_infinity"
            elif image.scalar < 0.0:
                flag = "behind"
            out[pid] = ScenePoint.from_paravector(image, flag)
        else:
            try:
                proj = tf.perspective_project(cam, p)
            except tf.PointAtInfinityError:
                diff = Point(p.normalized().data - Multivector.scalar(1.0) - Multivector.vector(cam.eye))
                out[pid] = ScenePoint.from_paravector(tf.perspective_operator(cam, diff), "at_infinity")
            else:
                out[pid] = ScenePoint.from_paravector(proj.point, None if proj.front else "behind")
        if out[pid].flag == "at_infinity":
            warnings.append(f"point {pid!r} projects to infinity")
    return scene.copy_with(out), warnings
