"""Hot inner loops, JIT-compiled when numba is available.

Set HYBRIDPSH_DISABLE_NUMBA=1 to force the pure-Python/NumPy fallback.
Both paths execute the very same function body, so results are
bit-identical; `benchmarks/bench_dispatch.py` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("HYBRIDPSH_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and not _DISABLE


def _dispatch_core(
    p_avail,
    p_load,
    pump_cap,
    turbine_cap,
    buy_cap,
    sell_cap,
    v_init,
    v_min,
    v_max,
    pump_q_per_mw,
    turbine_mw_per_q,
):
    """Sequential hourly dispatch: pump-before-sell, turbine-before-buy.

    Residual terms are computed by exact complements so the hourly power
    balance holds to the last bit.  Returns per-hour power arrays (MW)
    and the end-of-hour reservoir volume (m3).
    """
    n = p_avail.shape[0]
    p_pump = np.zeros(n)
    p_hydro = np.zeros(n)
    p_gp = np.zeros(n)
    p_gsold = np.zeros(n)
    p_deficit = np.zeros(n)
    p_curt = np.zeros(n)
    volume = np.zeros(n)

    v = v_init
    for t in range(n):
        avail = p_avail[t]
        load = p_load[t]
        if avail >= load:
            surplus = avail - load
            pp = surplus
            if pp > pump_cap:
                pp = pump_cap
            head_power = (v_max - v) / (3600.0 * pump_q_per_mw)
            if pp > head_power:
                pp = head_power
            if pp < 0.0:
                pp = 0.0
            rem = surplus - pp
            sold = rem
            if sold > sell_cap:
                sold = sell_cap
            p_pump[t] = pp
            p_gsold[t] = sold
            p_curt[t] = rem - sold
            v = v + pp * pump_q_per_mw * 3600.0
            if v > v_max:
                v = v_max
        else:
            deficit = load - avail
            ph = deficit
            if ph > turbine_cap:
                ph = turbine_cap
            water_power = (v - v_min) / 3600.0 * turbine_mw_per_q
            if ph > water_power:
                ph = water_power
            if ph < 0.0:
                ph = 0.0
            rem = deficit - ph
            gp = rem
            if gp > buy_cap:
                gp = buy_cap
            p_hydro[t] = ph
            p_gp[t] = gp
            p_deficit[t] = rem - gp
            v = v - ph / turbine_mw_per_q * 3600.0
            if v < v_min:
                v = v_min
        volume[t] = v
    return p_pump, p_hydro, p_gp, p_gsold, p_deficit, p_curt, volume


dispatch_core_py = _dispatch_core

if HAVE_NUMBA:
    # fastmath stays off: reordering would break bit-identity with the
    # fallback path and with reruns on other machines.
    dispatch_core_numba = njit(cache=True)(_dispatch_core)
else:  # pragma: no cover
    dispatch_core_numba = None

dispatch_core = dispatch_core_numba if USING_NUMBA else dispatch_core_py
