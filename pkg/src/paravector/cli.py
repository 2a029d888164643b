"""Command-line front end: transform, project, classify and inspect scenes."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .paravectors import classify_lines, line_parts, line_through, plane_dual, plane_parts, plane_through, plucker
from .scene import (
    SceneError,
    format_number,
    dumps_scene,
    load_scene,
    load_script,
    project_scene,
    run_script,
)


def _triple(text: str) -> list[float]:
    try:
        values = [float(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}") from None
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 comma-separated numbers, got {text!r}")
    return values


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected id,id, got {text!r}")
    return parts[0], parts[1]


def _vec(v) -> str:
    return "(" + ", ".join(format_number(c) for c in v) + ")"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_transform(args) -> int:
    scene = load_scene(args.scene)
    result = run_script(scene, load_script(args.script))
    _emit(dumps_scene(result), args.out)
    return 0


def cmd_project(args) -> int:
    if not args.pseudo and args.c is None:
        raise SceneError("--c is required for perspective projection")
    scene = load_scene(args.scene)
    result, warnings = project_scene(scene, args.eye, args.normal, args.c, pseudo=args.pseudo)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(dumps_scene(result), args.out)
    return 0


def cmd_classify(args) -> int:
    scene = load_scene(args.scene)
    lines = []
    for ids in (args.a, args.b):
        for pid in ids:
            if pid not in scene.points:
                raise SceneError(f"unknown point id {pid!r}")
        lines.append(line_through(*(scene.points[pid].paravector() for pid in ids)))
    print(classify_lines(*lines))
    return 0


def cmd_info(args) -> int:
    scene = load_scene(args.scene)
    for a, b in scene.segments:
        line = line_through(scene.points[a].paravector(), scene.points[b].paravector())
        l, m = plucker(line)
        print(f"segment {a} {b}: l={_vec(l)} m={_vec(m)} support={_vec(line_parts(line)[2])}")
    for a, b, c in scene.triangles:
        plane = plane_through(*(scene.points[pid].paravector() for pid in (a, b, c)))
        n, offset = plane_dual(plane)
        print(f"triangle {a} {b} {c}: n={_vec(n)} c={format_number(offset)} support={_vec(plane_parts(plane)[2])}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paravector", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="run a transform script over a scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("project", help="perspective or pseudo-perspective projection")
    p.add_argument("--scene", required=True)
    p.add_argument("--eye", type=_triple, required=True)
    p.add_argument("--normal", type=_triple, required=True)
    p.add_argument("--c", type=float, help="plane offset in n.x = c (perspective only)")
    p.add_argument("--pseudo", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("classify", help="relative position of two segments' lines")
    p.add_argument("--scene", required=True)
    p.add_argument("--a", type=_pair, required=True)
    p.add_argument("--b", type=_pair, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("info", help="Plücker coordinates, plane duals and supports")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
