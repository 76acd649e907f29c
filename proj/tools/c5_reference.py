#!/usr/bin/env python3
# Copyright 2026 The contract-menus Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the C5 hardness instance (k=2, alpha=1/2)."""
from fractions import Fraction as F
import math

s, k, alpha = 5, 2, F(1, 2)
edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
members = [1, 3]
l = math.ceil(F(k) / alpha)
levels = max(0, l - 3)
rho = F(1, s ** 3)
two = F(1, 2 ** l)
adj = {v: set() for v in range(1, s + 1)}
for u, v in edges:
    adj[u].add(v)
    adj[v].add(u)


def floor40(z):
    return F(math.floor(z * 2 ** 40), 2 ** 40)


cs = {v: floor40(math.cos(math.pi * v / (2 * s))) for v in adj}
sn = {v: floor40(math.sin(math.pi * v / (2 * s))) for v in adj}
reward = [F(0), F(0), F(1), F(0)]


def row(scale, u):
    r = [cs[u] * scale, sn[u] * scale, scale]
    return r + [1 - sum(r)]


def actions(v):
    """(dist, cost) for every action the type really owns, abar last."""
    out = [(row(F(1, 4), v), F(1, 4) - rho * l * two)]
    for u in sorted(adj[v]):
        for i in range(1, levels + 1):
            sc = F(1, 2 ** (i + 2))
            out.append((row(sc, u), sc - rho * (l - i) * two))
    out.append(([F(0), F(0), F(0), F(1)], F(0)))
    return out


def respond(v, p):
    best = None
    for d, c in actions(v):
        ua = sum(a * b for a, b in zip(d, p)) - c
        up = sum(a * (r - q) for a, r, q in zip(d, reward, p))
        if best is None or ua > best[0] or (ua == best[0] and up > best[1]):
            best = (ua, up)
    return best


shrink = 1 - 2 * rho * l * two
pay = {v: [cs[v] * shrink, sn[v] * shrink, F(0), F(0)] for v in members}
value = F(0)
for v in adj:
    if v in members:
        choice = v
    else:
        choice = members[0]
        for u in members:
            if respond(v, pay[u])[0] > respond(v, pay[choice])[0]:
                choice = u
    value += F(1, s) * respond(v, pay[choice])[1]

n_actions = s + s * levels + 1
print("l", l)
print("actions", n_actions)
print("owned", [len(actions(v)) for v in adj])
print("rho", rho)
print("eta", F(len(members), s))
print("claimed_bound", F(len(members), s) * rho * l * two / 2, float(F(len(members), s) * rho * l * two / 2))
print("witness_value", repr(float(value)))
print("witness_value_exact", value)
