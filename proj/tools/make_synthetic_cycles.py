#!/usr/bin/env python3
"""Generate the synthetic stand-in drive cycles bundled under data/cycles/.

The bundled profiles are NOT the official EPA/UNECE speed traces. They are
deterministic synthetic cycles with comparable durations, speed envelopes,
and driving character (city stop-and-go, highway cruise, aggressive driving,
multi-phase, and heavy-truck variants), for exercising the harness out of the
box. Drop official second-by-second CSVs (header `t,v`) into data/cycles/ to
validate against the real schedules.

Speeds are in m/s at 1 Hz. Accelerations stay within the feasibility
ceilings of the bundled vehicles (light-duty cycles within the light-duty
ceilings, hhddt-like cycles within the Class8 ceiling).
"""

import math
import os
import random

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "cycles")


def a_cap_light(v):
    ceil = min(3.36, 41.6 / max(v, 1e-9) - 2.119e-4 * v * v)
    return max(0.15, 0.7 * (ceil - 0.35))


def a_cap_heavy(v):
    ceil = min(2.423, 8.446 / max(v, 1e-9) - 2.627e-4 * v * v)
    return max(0.03, 0.6 * (ceil - 0.22))


class Builder:
    def __init__(self, cap):
        self.v = [0.0]
        self.cap = cap

    def hold(self, seconds, speed=None):
        s = self.v[-1] if speed is None else speed
        self.v.extend([s] * seconds)

    def ramp_to(self, target, decel_limit=1.3):
        while abs(self.v[-1] - target) > 1e-9:
            v = self.v[-1]
            if target > v:
                step = min(self.cap(v), target - v)
            else:
                step = -min(decel_limit, v - target)
            self.v.append(max(0.0, v + step))

    def cruise(self, seconds, wobble, period, rng):
        base = self.v[-1]
        phase = rng.uniform(0, 2 * math.pi)
        for k in range(seconds):
            v = base + wobble * math.sin(2 * math.pi * k / period + phase)
            prev = self.v[-1]
            dv = max(-self.cap(prev), min(self.cap(prev), v - prev))
            self.v.append(max(0.0, prev + dv))

    def trim(self, seconds):
        self.v = self.v[: seconds + 1]
        if self.v[-1] > 0:
            tail = Builder(self.cap)
            tail.v = [self.v[-1]]
            tail.ramp_to(0.0)
            self.v = self.v[: max(0, seconds + 1 - (len(tail.v) - 1))] + tail.v[1:]


def city(cap, rng, duration, peaks):
    b = Builder(cap)
    b.hold(8)
    while len(b.v) < duration:
        peak = rng.choice(peaks)
        b.ramp_to(peak)
        b.cruise(rng.randint(20, 60), 0.6, 17, rng)
        b.ramp_to(rng.choice([0.0, peak * 0.4]), decel_limit=1.1)
        if b.v[-1] == 0.0:
            b.hold(rng.randint(5, 20))
    b.trim(duration)
    return b.v


def highway(cap, rng, duration, cruise_speed, wobble):
    b = Builder(cap)
    b.hold(5)
    b.ramp_to(cruise_speed * 0.8)
    b.ramp_to(cruise_speed)
    while len(b.v) < duration:
        b.cruise(rng.randint(60, 120), wobble, 43, rng)
        b.ramp_to(cruise_speed + rng.uniform(-2.0, 1.5))
    b.trim(duration)
    return b.v


def phases(cap, rng, segments):
    b = Builder(cap)
    b.hold(10)
    for target, seconds, wobble in segments:
        b.ramp_to(target)
        b.cruise(seconds, wobble, 29, rng)
        b.ramp_to(target * 0.35, decel_limit=1.0)
    b.ramp_to(0.0)
    return b.v


def write(name, speeds):
    path = os.path.join(OUT, name + ".csv")
    with open(path, "w") as f:
        f.write("t,v\n")
        for t, v in enumerate(speeds):
            f.write(f"{t},{v:.3f}\n")
    print(f"{name}: {len(speeds)} samples, vmax {max(speeds):.1f} m/s")


def main():
    os.makedirs(OUT, exist_ok=True)
    rng = random.Random(20240817)

    write("udds_like", city(a_cap_light, rng, 1369, [8, 12, 16, 20, 24]))
    write("hwfet_like", highway(a_cap_light, rng, 765, 24.0, 1.2))
    write("us06_like", phases(a_cap_light, rng,
                              [(15, 60, 1.5), (32, 180, 1.8), (28, 120, 2.2), (33, 90, 1.0)]))
    write("wltc_like", phases(a_cap_light, rng,
                              [(12, 430, 1.0), (18, 330, 1.2), (25, 340, 1.2), (32, 230, 0.8)]))

    rng = random.Random(911)
    write("hhddt_cruise_like", city(a_cap_heavy, rng, 2083, [6, 10, 14, 18]))
    write("hhddt_transient_like", city(a_cap_heavy, rng, 668, [5, 9, 13]))
    write("hhddt_high_like", highway(a_cap_heavy, rng, 757, 23.0, 0.8))
    write("hhddt_h65_like", highway(a_cap_heavy, rng, 2083, 26.0, 0.5))


if __name__ == "__main__":
    main()
