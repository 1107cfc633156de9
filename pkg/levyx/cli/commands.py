'''
Copyright 2024 the levyx authors
This file is part of levyx.

levyx is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free
Software Foundation, either version 3 of the License, or (at your option)
any later version.

levyx is distributed in the hope that it will be useful, but WITHOUT ANY
WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
details: <http://www.gnu.org/licenses/>.
'''

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Sequence, TypeVar

from levyx.auxiliary import worker_count
from levyx.bounds import bound_params, envelope_components
from levyx.enums import EExitCodes, EPayoffs
from levyx.exceptions import ConfigurationError
from levyx.mc import mc_price_many
from levyx.models import ModelSpec
from levyx.pricing import TABLES, bond_price, density, price_option, price_strikes
from levyx.transform import payoff_from_kind
from .config import RunConfig
from .output import Report

logger = logging.getLogger(__name__)

T_ = TypeVar('T_')

ENVELOPE_NOTE = 'shape C (T - t) (gamma_bar + dnu_norm gamma_tilde), not a certified bound'

def ordered_map(func:Callable[[Any], T_], items:Sequence[Any]) -> list[T_]:
    """Maps func over items on LEVYX_THREADS worker threads, keeping the input order"""
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))

def _orders(prefix:str, N:int) -> list[str]:
    return [f'{prefix}{n}' for n in range(N + 1)]

def _meta(model:ModelSpec, drawn:tuple[tuple[str, float], ...]) -> list[tuple[str, Any]]:
    return [('model', model.name)] + [(f'param.{k}', v) for k, v in drawn]

def cmd_table(cfg:RunConfig) -> Report:
    """Prices every row of a reference table, exit code 4 if a row is off"""
    name = cfg.table or cfg.model_section.get('preset', '').strip()
    if name not in TABLES:
        raise ConfigurationError(f"no reference table '{name}', choose from {sorted(TABLES)}")
    table = TABLES[name]
    model = table.model()

    def run(row):
        result = price_option(table.request(row, model))
        return [row.T, row.k, result.total, result.implied_vol, row.value, row.iv, table.check(row, result)]

    rows = ordered_map(run, table.rows)
    failed = sum(not r[-1] for r in rows)
    if failed:
        logger.warning("%d of %d rows of table '%s' are off", failed, len(rows), name)
    return Report('table', ['T', 'k', 'value', 'iv', 'ref_value', 'ref_iv', 'ok'], rows,
                  [('table', name), ('model', model.name), ('order', table.N)],
                  EExitCodes.REGRESSION if failed else EExitCodes.OK)

def cmd_price(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, k, v0 ... vN, value, iv [, elapsed]"""
    if cfg.table is not None:
        return cmd_table(cfg)

    def run(T:float):
        results = price_strikes(cfg.request(model, T, implied_vol=True), cfg.strikes)
        return [[T, k, *r.values, r.total, r.implied_vol] + ([r.diagnostics.elapsed] if cfg.timings else [])
                for k, r in zip(cfg.strikes, results)]

    columns = ['T', 'k'] + _orders('v', cfg.order) + ['value', 'iv'] + (['elapsed'] if cfg.timings else [])
    rows = [row for block in ordered_map(run, cfg.maturities) for row in block]
    return Report('price', columns, rows, _meta(model, drawn))

def cmd_iv(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, k, value, iv"""
    def run(T:float):
        results = price_strikes(cfg.request(model, T, implied_vol=True, timings=False), cfg.strikes)
        return [[T, k, r.total, r.implied_vol] for k, r in zip(cfg.strikes, results)]

    rows = [row for block in ordered_map(run, cfg.maturities) for row in block]
    return Report('iv', ['T', 'k', 'value', 'iv'], rows, _meta(model, drawn))

def cmd_density(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, y, p0 ... pN, value [, gamma_bar, gamma_tilde, envelope]"""
    meta = _meta(model, drawn)
    if cfg.bound:
        params, dnu = bound_params(model, m_bar=cfg.m_bar)
        meta += [('m_bar', params.m_bar), ('dnu_norm', dnu), ('C', cfg.C), ('envelope', ENVELOPE_NOTE)]

    def run(item:tuple[float, float]):
        T, y = item
        r = density(cfg.request(model, T, timings=False), y, at_target=cfg.bound)
        row = [T, y, *r.values, r.total]
        if cfg.bound:
            c = envelope_components(0., cfg.x0, T, y, params, dnu, cfg.C)
            row += [float(c.gamma_bar), float(c.gamma_tilde), float(c.value)]
        return row

    columns = ['T', 'y'] + _orders('p', cfg.order) + ['value']
    if cfg.bound:
        columns += ['gamma_bar', 'gamma_tilde', 'envelope']
    rows = ordered_map(run, [(T, y) for T in cfg.maturities for y in cfg.ys])
    return Report('density', columns, rows, meta)

def cmd_bond(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, s0 ... sN, value, spread"""
    def run(T:float):
        r = bond_price(cfg.request(model, T, payoff=EPayoffs.BOND, timings=False))
        return [T, *r.values, r.total, r.spread]

    rows = ordered_map(run, cfg.maturities)
    return Report('bond', ['T'] + _orders('s', cfg.order) + ['value', 'spread'], rows, _meta(model, drawn))

def cmd_bound(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, x, y, gamma_bar, gamma_tilde, envelope"""
    params, dnu = bound_params(model, m_bar=cfg.m_bar)
    rows = []
    for T in cfg.maturities:
        for y in cfg.ys:
            c = envelope_components(0., cfg.x0, T, y, params, dnu, cfg.C)
            rows.append([T, cfg.x0, y, float(c.gamma_bar), float(c.gamma_tilde), float(c.value)])
    meta = _meta(model, drawn) + [('m_bar', params.m_bar), ('dnu_norm', dnu), ('C', cfg.C),
                                  ('envelope', ENVELOPE_NOTE)]
    return Report('bound', ['T', 'x', 'y', 'gamma_bar', 'gamma_tilde', 'envelope'], rows, meta)

def cmd_mc(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, k, mean, se, lo, hi, paths [, elapsed]"""
    sim = cfg.simulation()
    payoffs = [payoff_from_kind(cfg.payoff, k) for k in cfg.strikes]
    rows = []
    for T in cfg.maturities:
        for k, e in zip(cfg.strikes, mc_price_many(model, sim, payoffs, 0., T, cfg.x0)):
            rows.append([T, k, e.mean, e.se, e.lo, e.hi, e.paths] + ([e.elapsed] if cfg.timings else []))
    columns = ['T', 'k', 'mean', 'se', 'lo', 'hi', 'paths'] + (['elapsed'] if cfg.timings else [])
    meta = _meta(model, drawn) + [('scheme', sim.scheme), ('dt', sim.dt), ('seed', sim.seed)]
    return Report('mc', columns, rows, meta)

def cmd_compare(cfg:RunConfig, model:ModelSpec, drawn=()) -> Report:
    """Rows T, k, value, mc_mean, mc_lo, mc_hi, in_ci, timing_ratio"""
    sim = cfg.simulation()
    payoffs = [payoff_from_kind(cfg.payoff, k) for k in cfg.strikes]
    rows = []
    for T in cfg.maturities:
        results = price_strikes(cfg.request(model, T, timings=True), cfg.strikes)
        estimates = mc_price_many(model, sim, payoffs, 0., T, cfg.x0)
        for k, r, e in zip(cfg.strikes, results, estimates):
            times = r.diagnostics.order_timings
            ratio = times[-1] / times[0] if times and times[0] > 0 else None
            rows.append([T, k, r.total, e.mean, e.lo, e.hi, e.contains(r.total), ratio])
    columns = ['T', 'k', 'value', 'mc_mean', 'mc_lo', 'mc_hi', 'in_ci', 'timing_ratio']
    meta = _meta(model, drawn) + [('scheme', sim.scheme), ('paths', sim.paths), ('dt', sim.dt), ('seed', sim.seed)]
    return Report('compare', columns, rows, meta)

COMMAND_FUNCS:dict[str, Callable[..., Report]] = {
    'price': cmd_price,
    'density': cmd_density,
    'iv': cmd_iv,
    'bond': cmd_bond,
    'bound': cmd_bound,
    'mc': cmd_mc,
    'compare': cmd_compare,
}
