"""Thin command-line client for the htspec service.

Every data command builds one JSON request and POSTs it to the service:
in-process by default, or to a running instance via --server. Output is
canonical JSON (sorted keys) or a derived table; exit codes are 0 on
success, 2 for domain errors, 3 for numeric failures, 1 for transport
problems.
"""

from __future__ import annotations

import argparse
import json
import sys


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        _fail(f"invalid JSON in {path!r}: {exc}", 2)
    except OSError as exc:
        _fail(f"cannot read {path!r}: {exc}", 2)


def _fail(message: str, code: int):
    print(message, file=sys.stderr)
    raise SystemExit(code)


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    # The in-process client import warns about its httpx backing; irrelevant here.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _render_table(data) -> str:
    if not isinstance(data, dict):
        return json.dumps(data, indent=2, sort_keys=True)
    lines: list[str] = []
    tables: list[tuple[str, list]] = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, list) and value and all(isinstance(item, dict) for item in value):
            tables.append((key, value))
        else:
            lines.append(f"{key}: {_cell(value)}")
    for title, rows in tables:
        keys = sorted({k for row in rows for k in row})
        rendered = [[_cell(row.get(k)) for k in keys] for row in rows]
        widths = [max(len(keys[i]), max(len(r[i]) for r in rendered)) for i in range(len(keys))]
        lines.append("")
        lines.append(f"[{title}]")
        lines.append("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
        for r in rendered:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines)


def _emit(payload, fmt: str) -> None:
    if fmt == "table":
        print(_render_table(payload))
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _post(args, path: str, payload: dict) -> dict:
    client = _client(args.server)
    try:
        response = client.post(path, json=payload)
    except Exception as exc:  # transport failure talking to a remote server
        _fail(f"request to {path} failed: {exc}", 1)
    finally:
        if args.server:
            client.close()
    if response.status_code >= 400:
        try:
            body = response.json()
        except ValueError:
            body = {}
        error = body.get("error")
        if error:
            _fail(f"{error.get('category', 'domain')} error: {error.get('message', '')}", 3 if error.get("category") == "numeric" else 2)
        detail = body.get("detail", response.text)
        _fail(f"request rejected ({response.status_code}): {detail}", 2)
    return response.json()


def _document_payload(args) -> dict:
    return {"document": _read_json(args.input)}


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="htspec",
        description="Eigenvalues and spectral radii of weighted uniform hypertrees.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="input document path, or - for stdin")
    common.add_argument("--server", default=None, help="base URL of a running service; default is in-process")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--tol", type=float, default=None, help="override the default tolerance")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized self-tests")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="report the tree certificate")
    sub.add_parser("matching-poly", parents=[common], help="weighted matching polynomial")
    sub.add_parser("phi", parents=[common], help="signed matching-count polynomial")
    sub.add_parser("subtrees", parents=[common], help="enumerate subtrees")
    sub.add_parser("spectrum", parents=[common], help="complete certified eigenvalue report")
    radius = sub.add_parser("radius", parents=[common], help="spectral radius (nonnegative weights)")
    radius.add_argument("--cross-check", action="store_true", help="include the power-iteration estimate and gap")
    verify = sub.add_parser("verify", parents=[common], help="re-certify a spectrum report")
    verify.add_argument("--report", required=True, help="path to a spectrum report JSON")
    corollary = sub.add_parser("corollary", parents=[common], help="Laplacian / signless-Laplacian spectrum")
    corollary.add_argument("--sign", required=True, choices=("laplacian", "signless"))
    mu_tilde = sub.add_parser("mu-tilde", parents=[common], help="evaluate the per-edge matching sum")
    mu_tilde.add_argument(
        "--lambdas",
        required=True,
        help='JSON: a list with one scalar per edge, or a number/"p/q" to broadcast',
    )
    normal_check = sub.add_parser("normal-check", parents=[common], help="check the incidence-matrix balance conditions")
    normal_check.add_argument("--matrix", required=True, help="path to JSON [{v, e, value}, ...]")
    normal_check.add_argument(
        "--lambdas",
        required=True,
        help="JSON: a broadcast scalar enables the cycle check; a list checks per-edge values",
    )
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = _parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("htspec.service.app:app", host=args.host, port=args.port)
        return 0

    if args.command == "validate":
        payload = _document_payload(args)
        body = _post(args, "/validate", payload)
    elif args.command == "matching-poly":
        body = _post(args, "/matching-poly", _document_payload(args))
    elif args.command == "phi":
        body = _post(args, "/phi", _document_payload(args))
    elif args.command == "subtrees":
        body = _post(args, "/subtrees", _document_payload(args))
    elif args.command == "spectrum":
        payload = _document_payload(args)
        if args.tol is not None:
            payload["tol"] = args.tol
        body = _post(args, "/spectrum", payload)
    elif args.command == "radius":
        payload = _document_payload(args)
        payload["cross_check"] = bool(args.cross_check)
        if args.tol is not None:
            payload["tol"] = args.tol
        if args.seed is not None:
            payload["seed"] = args.seed
        body = _post(args, "/radius", payload)
    elif args.command == "verify":
        payload = _document_payload(args)
        payload["report"] = _read_json(args.report)
        if args.tol is not None:
            payload["tol"] = args.tol
        body = _post(args, "/verify", payload)
    elif args.command == "corollary":
        payload = _document_payload(args)
        payload["sign"] = args.sign
        if args.tol is not None:
            payload["tol"] = args.tol
        body = _post(args, "/corollary", payload)
    elif args.command == "mu-tilde":
        payload = _document_payload(args)
        try:
            payload["lambdas"] = json.loads(args.lambdas)
        except json.JSONDecodeError as exc:
            _fail(f"--lambdas is not valid JSON: {exc}", 2)
        body = _post(args, "/mu-tilde", payload)
    elif args.command == "normal-check":
        payload = _document_payload(args)
        payload["matrix"] = _read_json(args.matrix)
        try:
            payload["lambdas"] = json.loads(args.lambdas)
        except json.JSONDecodeError as exc:
            _fail(f"--lambdas is not valid JSON: {exc}", 2)
        if args.tol is not None:
            payload["tol"] = args.tol
        body = _post(args, "/normal-check", payload)
    else:  # pragma: no cover - argparse enforces the choices
        _fail(f"unknown command {args.command!r}", 2)

    _emit(body, args.format)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
