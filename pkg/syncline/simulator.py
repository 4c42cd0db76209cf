# -*- coding: utf8 -*-

"""
Worst-case simulation of the two fusion chains, for comparison with the
closed-form Syncline.

For each timing error ``tau`` on a grid, a number of trial states are taken
along a maneuver flown at the platform's full dynamics. Every trial draws
synchronization offsets and sensor noise, runs the fusion chain from
``syncline.sensors`` and measures the distance to the true object. The worst
trial is kept and compared with the model's prediction.

Two noise modes are offered:

``adversarial``
    Offsets of exactly ``+-tau`` and noise of exactly ``+-sigma`` per
    component, signs chosen greedily, source by source, to make the error as
    large as possible. No random numbers are involved.
``stochastic``
    Offsets uniform in ``[-tau, tau]`` and zero-mean Gaussian noise. Every
    (tau, trial) pair gets its own PCG64 stream spawned from the root seed.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from syncline.catalog import POSITION, RANGE_BEARING
from syncline.exceptions import DomainError, ValidationError
from syncline.kinematics import euler_to_rotation
from syncline.model import (payload_budget, sample_curve, survey_budget,
                            syncline, tau_crit)
from syncline.sensors import (GEOREF_CHANNELS, GEOREF_REFERENCES,
                              SURVEY_CHANNELS, SURVEY_REFERENCES, NoiseDraw,
                              RigidState, SyncOffsets, georeference,
                              measure_attitude, measure_position,
                              measure_range_bearing, measure_usbl,
                              survey_georeference, virtual_auv_position)

logger = logging.getLogger(__name__)

ADVERSARIAL = 'adversarial'
STOCHASTIC = 'stochastic'
NOISE_MODES = (ADVERSARIAL, STOCHASTIC)

GEOREF = 'georef'
SURVEY = 'survey'
SCENARIOS = (GEOREF, SURVEY)

CIRCULAR = 'circular'
STRAIGHT = 'straight'
ALIGNED = 'adversarial-aligned'
PATTERNS = (CIRCULAR, STRAIGHT, ALIGNED)

RNG_ALGORITHM = 'PCG64'

#: A zero prediction is matched when the simulated error is below this.
ZERO_ERROR = 1e-9


def log_grid(tau_min, tau_max, n):
    """
    ``n`` log-spaced timing errors from ``tau_min`` to ``tau_max``
    inclusive, as a tuple of floats.
    """
    if not 0 < tau_min < tau_max:
        raise DomainError('Need 0 < tau_min < tau_max, got {!r}, {!r}'.format(
            tau_min, tau_max))
    if n < 2:
        raise DomainError('Need at least two grid points')
    grid = np.logspace(math.log10(tau_min), math.log10(tau_max), int(n))
    grid[0], grid[-1] = tau_min, tau_max
    return tuple(float(t) for t in grid)


@dataclass(frozen=True)
class TrajectoryProfile:
    """
    A maneuver at constant speed ``v`` (m/s) and turn rate ``omega``
    (rad/s). ``pattern`` picks how trials are spread along it: ``circular``
    turns steadily and looks around the full horizon, ``straight`` drives
    without turning, ``adversarial-aligned`` turns steadily and always looks
    to the side where turning and driving displace the object the same way.
    """
    v: float
    omega: float
    pattern: str = CIRCULAR

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise ValidationError('Unknown pattern {!r}'.format(self.pattern),
                                  field='pattern')
        if not (self.v >= 0 and self.omega >= 0 and math.isfinite(self.v) and
                math.isfinite(self.omega)):
            raise ValidationError('Speed and turn rate must be non-negative')

    @classmethod
    def for_platform(cls, platform, pattern=CIRCULAR):
        return cls(platform.v_max, platform.omega_max, pattern)

    def check(self, platform):
        if self.v > platform.v_max or self.omega > platform.omega_max:
            raise ValidationError(
                'Profile exceeds the dynamics of {}'.format(platform.name))

    @property
    def turning(self):
        return self.pattern != STRAIGHT and self.omega > 0

    @property
    def period(self):
        """
        Duration over which trials are spread: one full turn, or a second
        when not turning.
        """
        return 2 * math.pi / self.omega if self.turning else 1.0

    def line_of_sight(self, k, n):
        """
        Horizontal body-frame unit vector towards the object in trial ``k``
        of ``n``.
        """
        if self.pattern == ALIGNED:
            azimuth = -math.pi / 2
        else:
            azimuth = -math.pi + 2 * math.pi * (k + 0.5) / n
        return np.array([math.cos(azimuth), math.sin(azimuth), 0.0])


def generate_state(profile, t):
    """
    The vehicle state ``t`` seconds into ``profile``, starting at the origin
    heading north. Turning maneuvers follow a circle of radius
    ``v / omega``.
    """
    if not t >= 0:
        raise DomainError('t must be non-negative, got {!r}'.format(t))
    v = profile.v
    if profile.turning:
        omega = profile.omega
        yaw = omega * t
        radius = v / omega
        p = (radius * math.sin(yaw), radius * (1 - math.cos(yaw)), 0.0)
        return RigidState(p, euler_to_rotation((0.0, 0.0, yaw)),
                          (v, 0.0, 0.0), (0.0, 0.0, omega))
    return RigidState((v * t, 0.0, 0.0), np.eye(3), (v, 0.0, 0.0),
                      (0.0, 0.0, 0.0))


@dataclass(frozen=True)
class ScenarioState:
    """
    Ground truth of one trial: vehicle states by name (``body`` for
    georeferencing, ``sv`` and ``auv`` for a survey), the object position,
    the body-frame line of sight and the synchronization offsets in force.
    """
    states: dict
    target: np.ndarray
    los: np.ndarray
    offsets: SyncOffsets = field(default_factory=SyncOffsets)

    def with_offsets(self, offsets):
        return replace(self, offsets=offsets)


def draw_offsets(tau, mode, rng=None, channels=GEOREF_CHANNELS,
                 references=GEOREF_REFERENCES, signs=None):
    """
    Offsets for every non-reference channel. Adversarial offsets are
    ``sign * tau`` with signs from ``signs`` (default all positive);
    stochastic offsets are uniform in ``[-tau, tau]``.
    """
    if not tau >= 0:
        raise DomainError('tau must be non-negative, got {!r}'.format(tau))
    offsets = {}
    for channel in channels:
        if channel in references:
            continue
        if mode == ADVERSARIAL:
            sign = 1 if signs is None else signs.get(channel, 1)
            offsets[channel] = sign * tau
        elif mode == STOCHASTIC:
            offsets[channel] = float(rng.uniform(-tau, tau)) if tau else 0.0
        else:
            raise DomainError('Unknown noise mode {!r}'.format(mode))
    return SyncOffsets(offsets, tuple(references))


def draw_noise(sigmas, mode, rng=None, signs=None):
    """
    Noise for every channel in ``sigmas`` (channel to 3-tuple of standard
    deviations). Adversarial components are ``sign * sigma``.
    """
    values = {}
    for channel, sigma in sigmas.items():
        sigma = np.asarray(sigma, dtype=float)
        if mode == ADVERSARIAL:
            component_signs = np.asarray(
                (1, 1, 1) if signs is None else signs.get(channel, (1, 1, 1)),
                dtype=float)
            values[channel] = component_signs * sigma
        elif mode == STOCHASTIC:
            values[channel] = rng.normal(0.0, 1.0, 3) * sigma
        else:
            raise DomainError('Unknown noise mode {!r}'.format(mode))
    return NoiseDraw(values)


def _sigma_triple(sensor):
    if sensor.kind == POSITION:
        return (sensor.sigma_p, ) * 3
    if sensor.kind == RANGE_BEARING:
        return (sensor.sigma_r, sensor.sigma_az, sensor.sigma_el)
    return tuple(sensor.sigma_rpy)


class _Chain(object):
    """
    One fusion chain over precomputed trial truths. ``measure`` produces a
    single channel's measurement, ``fuse`` turns a full set into an estimate.
    """

    channels = ()
    references = ()

    def measure(self, truth, channel, mu, noise):
        raise NotImplementedError

    def fuse(self, truth, measurements):
        raise NotImplementedError

    def measure_all(self, truth, noise):
        return {ch: self.measure(truth, ch, truth.offsets[ch], noise[ch])
                for ch in self.channels}

    def error(self, truth, measurements):
        return float(np.linalg.norm(self.fuse(truth, measurements) -
                                    truth.target))

    def evaluate(self, truth, noise):
        """
        Fusion error of ``truth`` (with its offsets) under ``noise``.
        """
        return self.error(truth, self.measure_all(truth, noise))


class GeorefChain(_Chain):
    """
    GNSS, INS and a LiDAR on one vehicle looking at an object ``d`` metres
    away.
    """

    channels = GEOREF_CHANNELS
    references = GEOREF_REFERENCES

    def __init__(self, platform, payload, profile):
        payload = payload.with_default_levers(platform)
        payload.check_levers(platform)
        profile.check(platform)
        self.platform = platform
        self.payload = payload
        self.profile = profile
        self.d = platform.d
        self.lever_position = payload.lever(POSITION)
        self.lever_rb = payload.lever(RANGE_BEARING)
        self.sigmas = {
            'gnss': _sigma_triple(payload.position_sensor),
            'ins': _sigma_triple(payload.attitude_sensor),
            'lidar': _sigma_triple(payload.range_bearing_sensor),
        }

    def budget(self):
        return payload_budget(self.platform, self.payload)

    @property
    def max_turn_rate(self):
        return self.profile.omega if self.profile.turning else 0.0

    def truth(self, k, n):
        state = generate_state(self.profile, k / n * self.profile.period)
        los = self.profile.line_of_sight(k, n)
        target = state.point(self.lever_rb) + state.R @ (self.d * los)
        return ScenarioState({'body': state}, target, los)

    def measure(self, truth, channel, mu, noise):
        state = truth.states['body']
        if channel == 'gnss':
            return measure_position(state, self.lever_position, mu, noise)
        if channel == 'ins':
            return measure_attitude(state, mu, noise)
        return measure_range_bearing(self.d * truth.los, None, noise)

    def fuse(self, truth, m):
        return georeference(m['gnss'], m['ins'], m['lidar'],
                            self.lever_rb - self.lever_position)


class SurveyChain(_Chain):
    """
    An SV tracking an AUV by USBL, and the AUV mapping the seabed with an
    MBE. Both vehicles share a heading; the AUV is ``d_sv`` from the USBL
    receiver and the seabed ``d_auv`` from the MBE, along the same line of
    sight.
    """

    channels = SURVEY_CHANNELS
    references = SURVEY_REFERENCES

    def __init__(self, system, pattern=CIRCULAR):
        sv_payload = system.sv_payload.with_default_levers(system.sv)
        auv_payload = system.auv_payload.with_default_levers(system.auv)
        sv_payload.check_levers(system.sv)
        auv_payload.check_levers(system.auv)
        self.system = replace(system, sv_payload=sv_payload,
                              auv_payload=auv_payload)
        self.profile = TrajectoryProfile.for_platform(system.sv, pattern)
        self.auv_profile = TrajectoryProfile.for_platform(system.auv, pattern)
        self.lever_gnss = sv_payload.lever(POSITION)
        self.lever_rx = sv_payload.lever(RANGE_BEARING)
        self.lever_tp = auv_payload.lever(POSITION)
        self.lever_mbe = auv_payload.lever(RANGE_BEARING)
        self.sigmas = {
            'gnss': _sigma_triple(sv_payload.position_sensor),
            'ins_sv': _sigma_triple(sv_payload.attitude_sensor),
            'usbl': _sigma_triple(sv_payload.range_bearing_sensor),
            'auvpos': _sigma_triple(auv_payload.position_sensor),
            'ins_auv': _sigma_triple(auv_payload.attitude_sensor),
            'mbe': _sigma_triple(auv_payload.range_bearing_sensor),
        }

    def budget(self):
        return survey_budget(self.system)

    @property
    def max_turn_rate(self):
        if not self.profile.turning:
            return 0.0
        return max(self.profile.omega, self.auv_profile.omega)

    def truth(self, k, n):
        system = self.system
        sv = generate_state(self.profile, k / n * self.profile.period)
        los = self.profile.line_of_sight(k, n)
        transponder = sv.point(self.lever_rx) + sv.R @ (system.d_sv * los)
        omega = self.auv_profile.omega if self.auv_profile.turning else 0.0
        auv = RigidState(transponder - sv.R @ self.lever_tp, sv.R,
                         (self.auv_profile.v, 0.0, 0.0), (0.0, 0.0, omega))
        target = auv.point(self.lever_mbe) + auv.R @ (system.d_auv * los)
        return ScenarioState({'sv': sv, 'auv': auv}, target, los)

    def measure(self, truth, channel, mu, noise):
        sv, auv = truth.states['sv'], truth.states['auv']
        if channel == 'gnss':
            return measure_position(sv, self.lever_gnss, mu, noise)
        if channel == 'ins_sv':
            return measure_attitude(sv, mu, noise)
        if channel == 'usbl':
            return measure_usbl(sv, auv.point(self.lever_tp), self.lever_rx,
                                None, noise)
        if channel == 'auvpos':
            return (mu, np.asarray(noise, dtype=float))
        if channel == 'ins_auv':
            return measure_attitude(auv, mu, noise)
        return measure_range_bearing(self.system.d_auv * truth.los, None,
                                     noise)

    def fuse(self, truth, m):
        mu_auvpos, auvpos_noise = m['auvpos']
        auvpos = virtual_auv_position(
            m['gnss'], m['ins_sv'], m['usbl'], self.lever_rx - self.lever_gnss,
            truth.states['auv'], self.lever_tp, mu_auvpos) + auvpos_noise
        return survey_georeference(auvpos, m['ins_auv'], m['mbe'],
                                   self.lever_mbe - self.lever_tp)


def _sources(chain, tau):
    """
    Error sources in search order: offsets first, then every noise
    component with a non-zero sigma.
    """
    sources = []
    if tau > 0:
        sources.extend((ch, None) for ch in chain.channels
                       if ch not in chain.references)
    for ch in chain.channels:
        for i, sigma in enumerate(chain.sigmas[ch]):
            if sigma > 0:
                sources.append((ch, i))
    return sources


def worst_case_trial(chain, truth, tau):
    """
    Greedy adversarial search on one trial. Each source in turn is set to
    ``+1`` and ``-1`` times its magnitude with the others held, and the sign
    giving the larger error is kept.
    """
    offsets = {ch: 0.0 for ch in chain.channels}
    noise = {ch: np.zeros(3) for ch in chain.channels}
    measurements = {ch: chain.measure(truth, ch, 0.0, noise[ch])
                    for ch in chain.channels}
    best = chain.error(truth, measurements)
    for ch, i in _sources(chain, tau):
        choice = None
        for sign in (1, -1):
            mu, vector = offsets[ch], noise[ch]
            if i is None:
                mu = sign * tau
            else:
                vector = vector.copy()
                vector[i] = sign * chain.sigmas[ch][i]
            candidate = dict(measurements)
            candidate[ch] = chain.measure(truth, ch, mu, vector)
            err = chain.error(truth, candidate)
            if choice is None or err > choice[0]:
                choice = (err, mu, vector, candidate[ch])
        best, offsets[ch], noise[ch], measurements[ch] = choice
    return best


def signed_trial(chain, truth, tau, signs):
    """
    Fusion error of one trial with every source of ``_sources(chain, tau)``
    set to its magnitude times the matching entry of ``signs``.
    """
    sources = _sources(chain, tau)
    if len(signs) != len(sources):
        raise DomainError('Expected {} signs, got {}'.format(
            len(sources), len(signs)))
    offsets = {ch: 0.0 for ch in chain.channels}
    noise = {ch: np.zeros(3) for ch in chain.channels}
    for (ch, i), sign in zip(sources, signs):
        if i is None:
            offsets[ch] = sign * tau
        else:
            noise[ch][i] = sign * chain.sigmas[ch][i]
    return chain.error(truth, {ch: chain.measure(truth, ch, offsets[ch],
                                                 noise[ch])
                               for ch in chain.channels})


def _stream(seed, i, j):
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(i, j))))


def _evaluate_tau(args):
    chain, truths, tau, index, mode, seed = args
    worst = 0.0
    for j, truth in enumerate(truths):
        if mode == ADVERSARIAL:
            err = worst_case_trial(chain, truth, tau)
        else:
            rng = _stream(seed, index, j)
            offsets = draw_offsets(tau, STOCHASTIC, rng, chain.channels,
                                   chain.references)
            noise = draw_noise(chain.sigmas, STOCHASTIC, rng)
            err = chain.evaluate(truth.with_offsets(offsets), noise)
        worst = max(worst, err)
    logger.debug('tau=%g worst=%g', tau, worst)
    return worst


def _default_grid():
    return log_grid(1e-7, 1.0, 40)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a simulation needs besides the hardware. ``tau_grid`` is
    sorted ascending; ``seed`` only matters in stochastic mode.
    """
    tau_grid: tuple = field(default_factory=_default_grid)
    trials_per_tau: int = 256
    noise_mode: str = ADVERSARIAL
    seed: int = 0
    scenario: str = GEOREF
    pattern: str = CIRCULAR

    def __post_init__(self):
        grid = tuple(float(t) for t in self.tau_grid)
        object.__setattr__(self, 'tau_grid', grid)
        if not grid:
            raise ValidationError('Empty tau grid', field='tau_grid')
        if any(not (math.isfinite(t) and t >= 0) for t in grid):
            raise ValidationError('Timing errors must be finite and '
                                  'non-negative', field='tau_grid')
        if list(grid) != sorted(grid):
            raise ValidationError('tau grid must ascend', field='tau_grid')
        if self.trials_per_tau < 1:
            raise ValidationError('Need at least one trial',
                                  field='trials_per_tau')
        if self.noise_mode not in NOISE_MODES:
            raise ValidationError('Unknown noise mode {!r}'.format(
                self.noise_mode), field='noise_mode')
        if self.scenario not in SCENARIOS:
            raise ValidationError('Unknown scenario {!r}'.format(
                self.scenario), field='scenario')
        if self.pattern not in PATTERNS:
            raise ValidationError('Unknown pattern {!r}'.format(
                self.pattern), field='pattern')
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError('Seed must fit in 64 bits', field='seed')


@dataclass(frozen=True)
class RunResult:
    taus: tuple
    worst_case: tuple
    prediction: tuple
    ratios: tuple
    metadata: dict

    def within(self, low, high):
        return all(low <= r <= high for r in self.ratios)

    def rows(self):
        return zip(self.taus, self.worst_case, self.prediction, self.ratios)


def _ratio(worst, predicted):
    if predicted == 0:
        return 1.0 if worst <= ZERO_ERROR else math.inf
    return worst / predicted


def _chain_for(config, platform, payload, system):
    if config.scenario == SURVEY:
        if system is None:
            raise ValidationError('A survey run needs a survey system')
        return SurveyChain(system, config.pattern)
    if platform is None or payload is None:
        raise ValidationError('A georeferencing run needs a platform and a '
                              'payload')
    return GeorefChain(platform, payload,
                       TrajectoryProfile.for_platform(platform,
                                                      config.pattern))


def run(config, platform=None, payload=None, system=None, workers=1):
    """
    Simulate every timing error of ``config.tau_grid`` and compare with the
    Syncline. Georeferencing runs take a platform and payload, survey runs a
    survey system. ``workers`` > 1 spreads grid points over processes; the
    result does not depend on it.

    In adversarial mode an offset admissible at one grid point stays
    admissible at every larger one, so worst cases are carried forward and
    never decrease along the grid.
    """
    started = time.time()
    chain = _chain_for(config, platform, payload, system)
    longest = config.tau_grid[-1] * chain.max_turn_rate
    if longest >= math.pi / 2:
        raise DomainError(
            'Turning {:.3f} rad within the largest timing error is outside '
            'the small-angle model; shorten the tau grid'.format(longest))
    budget = chain.budget()
    n = config.trials_per_tau
    truths = [chain.truth(k, n) for k in range(n)]
    jobs = [(chain, truths, tau, i, config.noise_mode, config.seed)
            for i, tau in enumerate(config.tau_grid)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            worst = list(pool.map(_evaluate_tau, jobs))
    else:
        worst = [_evaluate_tau(job) for job in jobs]

    if config.noise_mode == ADVERSARIAL:
        worst = list(np.maximum.accumulate(worst)) if worst else worst
    worst = tuple(float(w) for w in worst)
    prediction = tuple(syncline(budget, tau) for tau in config.tau_grid)
    ratios = tuple(_ratio(w, p) for w, p in zip(worst, prediction))

    metadata = {
        'scenario': config.scenario,
        'noise_mode': config.noise_mode,
        'pattern': config.pattern,
        'trials_per_tau': n,
        'seed': config.seed,
        'rng': RNG_ALGORITHM,
        'budget': budget.label,
        'delta_sync_rate': budget.delta_sync_rate,
        'delta_sensor': budget.delta_sensor,
        'tau_crit': tau_crit(budget),
    }
    logger.info('Simulated %s (%s, %s): %d taus x %d trials, seed %d, '
                '%.2fs', budget.label, config.scenario, config.noise_mode,
                len(config.tau_grid), n, config.seed, time.time() - started)
    return RunResult(tuple(config.tau_grid), worst, prediction, ratios,
                     metadata)


def _curve(budget, config):
    positive = [t for t in config.tau_grid if t > 0]
    if len(positive) >= 2:
        return sample_curve(budget, positive[0], positive[-1], len(positive))
    return sample_curve(budget, 1e-7, 1.0, 40)


def sweep_sensors(platform, payloads, config, workers=1):
    """
    Curves and simulations for several payloads on one platform, sharing
    ``config``. For survey runs ``payloads`` are survey systems and
    ``platform`` is ignored. Returns ``(payload, curve, result)`` triples.
    """
    if not payloads:
        raise ValidationError('Nothing to sweep')
    results = []
    for payload in payloads:
        if config.scenario == SURVEY:
            result = run(config, system=payload, workers=workers)
            budget = survey_budget(payload)
        else:
            result = run(config, platform, payload, workers=workers)
            budget = payload_budget(platform, payload)
        results.append((payload, _curve(budget, config), result))
    return results


def sweep_platforms(platforms, payload, config, workers=1):
    """
    As ``sweep_sensors``, holding the payload and varying the platform.
    """
    if not platforms:
        raise ValidationError('Nothing to sweep')
    if config.scenario != GEOREF:
        raise ValidationError('Platform sweeps are georeferencing runs')
    results = []
    for platform in platforms:
        result = run(config, platform, payload, workers=workers)
        budget = payload_budget(platform, payload)
        results.append((platform, _curve(budget, config), result))
    return results
