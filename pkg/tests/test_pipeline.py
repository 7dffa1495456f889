import json
import threading
import urllib.error
import urllib.parse
import urllib.request
from concurrent.futures import ThreadPoolExecutor

import pytest

from fdl.pipeline import render_response
from fdl.server import make_server

FLAGSHIP = "What pediatricians are open on the weekend near me?"
LAT, LON = 34.05, -118.24


def scrub(response: dict) -> dict:
    cleaned = dict(response)
    cleaned.pop("timings_ms", None)
    return cleaned


def test_flagship_search_shape(engine):
    response = engine.search(FLAGSHIP, lat=LAT, lon=LON)
    assert response["query"] == FLAGSHIP
    assert response["corrected_query"].startswith("what pediatrician")
    interp = response["interpretation"]
    assert interp["template_id"] == "find_providers_by_specialty"
    assert interp["bindings"]["SPECIALTY"] == "Pediatrics"
    assert interp["bindings"]["TEMPORAL"] == "WEEKEND"
    assert interp["bindings"]["GEO"] == "NEAR_ME"
    results = response["results"]
    assert 0 < len(results) <= 10
    assert all(r["kind"] == "provider" for r in results)
    assert all(r["source"] == "kg" for r in results)
    distances = [r["distance_km"] for r in results]
    assert distances == sorted(distances)


def test_unknown_question_keyword_only(engine):
    response = engine.search("hello world")
    assert response["interpretation"] is None
    assert response["results"] == []


def test_aggregate_question_response(engine):
    response = engine.search("how many pediatricians per city")
    assert "aggregate" in response
    table = response["aggregate"]
    assert table["columns"] == ["l.city", "count(p)"]
    assert table["rows"]
    assert all(r["kind"] == "aggregate" for r in response["results"])
    assert [r["name"] for r in response["results"]] == [row[0] for row in table["rows"]]


def test_k_truncates_results(engine):
    full = engine.search("kids doctor", k=50)["results"]
    cut = engine.search("kids doctor", k=2)["results"]
    assert len(cut) == min(2, len(full))
    assert [r["entity_id"] for r in cut] == [r["entity_id"] for r in full[:len(cut)]]


def test_determinism_repeated_requests(engine):
    a = engine.search(FLAGSHIP, lat=LAT, lon=LON)
    b = engine.search(FLAGSHIP, lat=LAT, lon=LON)
    assert scrub(a) == scrub(b)
    assert render_response(scrub(a)) == render_response(scrub(b))


def test_near_me_without_coords_falls_back(engine):
    response = engine.search("pediatrician near me")
    assert response["interpretation"]["template_id"] == "list_providers_by_specialty"
    assert response["results"]


def test_city_template_with_geo_slot(engine, provider_records, location_records):
    response = engine.search("pediatrics in crestline")
    assert response["interpretation"]["template_id"] == "find_providers_by_specialty_in_city"
    crestline = {l.id for l in location_records if l.city == "Crestline"}
    expected = {p.id for p in provider_records
                if "Pediatrics" in p.specialties and set(p.locations) & crestline}
    kg_ids = {r["entity_id"] for r in response["results"]
              if r["source"] in ("kg", "both") and r["kind"] == "provider"}
    assert kg_ids <= expected
    assert expected <= {r["entity_id"] for r in engine.search(
        "pediatrics in crestline", k=100)["results"]}


@pytest.fixture(scope="module")
def http_server(engine):
    server = make_server("127.0.0.1", 0, engine)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    server.server_close()


def http_get(base: str, path: str):
    try:
        with urllib.request.urlopen(base + path) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as err:
        return err.code, err.read().decode("utf-8")


def test_http_health(http_server):
    status, body = http_get(http_server, "/health")
    assert status == 200
    assert json.loads(body) == {"status": "ok"}


def test_http_search_matches_engine(engine, http_server):
    params = urllib.parse.urlencode({"q": FLAGSHIP, "lat": LAT, "lon": LON})
    status, body = http_get(http_server, f"/search?{params}")
    assert status == 200
    direct = engine.search(FLAGSHIP, lat=LAT, lon=LON)
    # identical bodies modulo the timing fields, which cannot repeat exactly
    assert render_response(scrub(json.loads(body))) == render_response(scrub(direct))


def test_http_validation_errors(http_server):
    for path in ("/search?q=", "/search", "/search?q=x&lat=34.05",
                 "/search?q=x&k=0", "/search?q=x&k=frog",
                 "/search?q=x&lat=a&lon=b"):
        status, body = http_get(http_server, path)
        assert status == 400, path
        assert "error" in json.loads(body)


def test_http_not_found(http_server):
    status, _ = http_get(http_server, "/nope")
    assert status == 404


def test_http_503_without_snapshot():
    server = make_server("127.0.0.1", 0, None)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        status, _ = http_get(base, "/search?q=x")
        assert status == 503
        status, _ = http_get(base, "/health")
        assert status == 200
    finally:
        server.shutdown()
        server.server_close()


def test_concurrent_requests_consistent(engine, http_server):
    params = urllib.parse.urlencode({"q": "kids doctor"})
    path = f"/search?{params}"

    def fetch(_):
        status, body = http_get(http_server, path)
        assert status == 200
        return render_response(scrub(json.loads(body)))

    with ThreadPoolExecutor(max_workers=8) as pool:
        bodies = list(pool.map(fetch, range(24)))
    assert len(set(bodies)) == 1
