#!/usr/bin/env python3
"""High-precision great-circle distance oracle.

Computes the haversine distance with 50-digit arithmetic (mpmath) and an
Earth radius of 6371.0 km. Used by the test suite as the independent
reference for the engine's double-precision implementation.

Run directly to print a few reference distances.
"""

from mpmath import mp, mpf, asin, cos, radians, sin, sqrt

mp.dps = 50
EARTH_RADIUS_KM = mpf("6371.0")


def haversine_mp(lat1, lon1, lat2, lon2) -> float:
    """Haversine distance in km, computed at 50 decimal digits."""
    phi1, lam1, phi2, lam2 = (radians(mpf(repr(v))) for v in (lat1, lon1, lat2, lon2))
    s_lat = sin((phi2 - phi1) / 2)
    s_lon = sin((lam2 - lam1) / 2)
    h = s_lat * s_lat + cos(phi1) * cos(phi2) * s_lon * s_lon
    return float(2 * EARTH_RADIUS_KM * asin(sqrt(h)))


if __name__ == "__main__":
    cases = [
        ((0.0, 0.0), (0.0, 1.0)),
        ((34.05, -118.24), (34.14, -118.05)),
        ((90.0, 0.0), (-90.0, 0.0)),
    ]
    for (lat1, lon1), (lat2, lon2) in cases:
        d = haversine_mp(lat1, lon1, lat2, lon2)
        print(f"({lat1}, {lon1}) -> ({lat2}, {lon2}): {d:.6f} km")
