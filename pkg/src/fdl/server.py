"""HTTP JSON API: ``GET /search`` and ``GET /health``.

The handler serves an immutable :class:`~fdl.pipeline.Engine` snapshot, so
concurrent requests are safe; a server started without a snapshot answers
503 until one is installed.
"""

from __future__ import annotations

from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .pipeline import Engine, render_response


class BadRequest(Exception):
    pass


def parse_search_params(query_string: str) -> dict:
    """Validate /search parameters; raises :class:`BadRequest` on bad input."""
    params = parse_qs(query_string)

    def single(name: str) -> Optional[str]:
        values = params.get(name)
        return values[0] if values else None

    q = single("q")
    if not q:
        raise BadRequest("missing or empty required parameter 'q'")
    lat_raw, lon_raw = single("lat"), single("lon")
    if (lat_raw is None) != (lon_raw is None):
        raise BadRequest("lat and lon must be supplied together")
    lat = lon = None
    if lat_raw is not None:
        try:
            lat, lon = float(lat_raw), float(lon_raw)
        except ValueError:
            raise BadRequest("lat and lon must be numbers")
    k = None
    k_raw = single("k")
    if k_raw is not None:
        try:
            k = int(k_raw)
        except ValueError:
            raise BadRequest("k must be an integer")
        if k < 1:
            raise BadRequest("k must be at least 1")
    return {"question": q, "lat": lat, "lon": lon, "city": single("city"), "k": k}


class SearchHandler(BaseHTTPRequestHandler):
    engine: Optional[Engine] = None

    def _send(self, body: str, status: int = 200) -> None:
        payload = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def do_GET(self) -> None:  # noqa: N802 - BaseHTTPRequestHandler signature
        parsed = urlparse(self.path)
        if parsed.path == "/health":
            self._send('{"status":"ok"}')
            return
        if parsed.path == "/search":
            if type(self).engine is None:
                self._send('{"error":"no snapshot loaded"}', status=503)
                return
            try:
                args = parse_search_params(parsed.query)
            except BadRequest as exc:
                self._send(render_response({"error": str(exc)}), status=400)
                return
            response = type(self).engine.search(
                args["question"], lat=args["lat"], lon=args["lon"],
                city=args["city"], k=args["k"])
            self._send(render_response(response))
            return
        self._send('{"error":"not found"}', status=404)

    def log_message(self, fmt: str, *args) -> None:  # noqa: A003
        return  # default stderr chatter is noise for a JSON service


def make_server(host: str, port: int, engine: Optional[Engine]) -> ThreadingHTTPServer:
    handler = type("BoundSearchHandler", (SearchHandler,), {"engine": engine})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(host: str, port: int, engine: Optional[Engine]) -> None:
    server = make_server(host, port, engine)
    print(f"serving on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
