"""Thin command-line client for the charlab service.

By default requests are served in-process through the ASGI app (no socket
needed); ``--server URL`` points the same commands at a running instance,
and ``charlab serve`` starts one.  Exit codes: 0 all checks passed,
1 check failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _parse_branch_points(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"could not parse branch points from {text!r}")


def _add_group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", choices=["GL", "SL", "TORUS"], default="SL")
    p.add_argument("--n", type=int, default=None,
                   help="matrix size (default 2, forced to 1 for TORUS)")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--scale", type=float, default=0.5)
    p.add_argument("--flat-tol", type=float, default=1e-10)


def _add_rank_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank-tol", type=float, default=1e-8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charlab",
        description="Character-variety symplectic laboratory (thin client).")
    parser.add_argument("--server", default=None,
                        help="base URL of a running charlab service; "
                             "default runs the service in-process")
    parser.add_argument("--out", default=None,
                        help="write the JSON report to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="random flat representation")
    _add_group_args(p)

    p = sub.add_parser("cohom", help="twisted cohomology dimensions")
    _add_group_args(p)
    _add_rank_args(p)

    p = sub.add_parser("goldman", help="Goldman matrix and invariant suite")
    _add_group_args(p)
    _add_rank_args(p)
    p.add_argument("--pairing-tol", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=50)

    p = sub.add_parser("oracle-check",
                       help="bar-complex vs simplicial pairing disagreement")
    _add_group_args(p)
    _add_rank_args(p)
    p.add_argument("--pairing-tol", type=float, default=1e-8)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--refinement", type=int, default=1)

    p = sub.add_parser("closedness", help="finite-difference d(omega) residual")
    _add_group_args(p)
    _add_rank_args(p)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--closedness-tol", type=float, default=1e-4)

    p = sub.add_parser("abelian",
                       help="periods, Riemann relations, pullback check")
    p.add_argument("--branch-points", type=_parse_branch_points,
                   default=[-5.0, -3.0, -1.0, 1.0, 3.0, 5.0],
                   help="comma-separated real branch points")
    p.add_argument("--quadrature-order", type=int, default=128)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--pairing-tol", dest="pullback_tol", type=float,
                   default=1e-6)

    p = sub.add_parser("report", help="aggregate acceptance-criteria table")
    p.add_argument("--flat-tol", type=float, default=1e-10)
    p.add_argument("--rank-tol", type=float, default=1e-8)
    p.add_argument("--pairing-tol", type=float, default=1e-8)
    p.add_argument("--quadrature-order", type=int, default=128)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _payload(args: argparse.Namespace) -> tuple:
    cmd = args.command
    if cmd in ("gen", "cohom", "goldman", "oracle-check", "closedness"):
        n = args.n
        if n is None:
            n = 1 if args.group == "TORUS" else 2
        body = {"group": args.group, "n": n, "genus": args.genus,
                "seed": args.seed, "scale": args.scale,
                "flat_tol": args.flat_tol}
        if cmd != "gen":
            body["rank_tol"] = args.rank_tol
        if cmd == "goldman":
            body["pairing_tol"] = args.pairing_tol
            body["samples"] = args.samples
        if cmd == "oracle-check":
            body["pairing_tol"] = args.pairing_tol
            body["pairs"] = args.pairs
            body["refinement"] = args.refinement
        if cmd == "closedness":
            body["step"] = args.step
            body["closedness_tol"] = args.closedness_tol
        return f"/v1/{cmd}", body
    if cmd == "abelian":
        return "/v1/abelian", {
            "branch_points": args.branch_points,
            "quadrature_order": args.quadrature_order,
            "seed": args.seed, "pairs": args.pairs,
            "pullback_tol": args.pullback_tol,
        }
    if cmd == "report":
        return "/v1/report", {
            "flat_tol": args.flat_tol, "rank_tol": args.rank_tol,
            "pairing_tol": args.pairing_tol,
            "quadrature_order": args.quadrature_order,
        }
    raise AssertionError(cmd)


def _call(server, path: str, body: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=body)

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://charlab.local",
                                     timeout=600.0) as client:
            return await client.post(path, json=body)

    return asyncio.run(go())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_PASS

    path, body = _payload(args)
    try:
        response = _call(args.server, path, body)
    except httpx.HTTPError as exc:
        print(f"error: could not reach service: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if response.status_code == 422:
        print(f"error: invalid request: {response.text}", file=sys.stderr)
        return EXIT_USAGE
    if response.status_code != 200:
        print(f"error: service returned {response.status_code}: "
              f"{response.text}", file=sys.stderr)
        return EXIT_NUMERIC

    envelope = response.json()
    text = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    report = envelope["report"]
    if report.get("status") == "numeric_failure":
        first = report["failures"][0] if report["failures"] else "numeric failure"
        print(f"numeric failure: {first}", file=sys.stderr)
        return EXIT_NUMERIC
    if not report.get("passed", False):
        first = report["failures"][0] if report["failures"] else "check failed"
        print(f"check failure: {first}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
