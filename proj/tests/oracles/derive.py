"""Independent evaluation of the expected values used by the C++ tests.

Plain Python with exact fractions where it matters; shares no code with the
library. Run it to regenerate the numbers quoted in tests/*.cpp.
"""
from fractions import Fraction as F
from itertools import permutations


def available_bandwidth(bw, load):
    return bw * (1 - load)


def transfer(size_bytes, bw_mbps, latency=0.0, load=0.0):
    return latency + size_bytes * 8 / (available_bandwidth(bw_mbps, load) * 1e6)


def threshold(q, Q, t, T):
    return F(q) * T / (F(Q) * t)


def priority(n, N):
    n, N = F(n), F(N)
    return (N - n) / N if n <= N else (N - n) / n


def queue_priorities(jobs, quotas):
    """jobs: list of (user, t). Returns per-job priority, recomputed from scratch."""
    T = sum(t for _, t in jobs)
    users = {u for u, _ in jobs}
    Q = sum(F(quotas[u]) for u in users)
    n = {u: sum(1 for v, _ in jobs if v == u) for u in users}
    return [priority(n[u], threshold(quotas[u], Q, t, T)) for u, t in jobs]


def rr(sites, jobs):
    counts = {s: 0 for s in sites}
    for i in range(jobs):
        counts[sites[i % len(sites)]] += 1
    return counts


def mean_wait(order):
    waited, clock = 0, 0
    for runtime in order:
        waited += clock
        clock += runtime
    return F(waited, len(order))


def brute_min_wait(runtimes):
    return min(mean_wait(p) for p in permutations(runtimes))


def main():
    print("available_bandwidth(1000, .99) =", available_bandwidth(1000, 0.99))
    print("available_bandwidth(10, .5) =", available_bandwidth(10, 0.5))
    print("compute 100 MFLOP / (10 MFLOPS x 2) =", 100 / (10 * 2))
    print("transfer 10GB @1000 =", transfer(10e9, 1000))
    print("transfer 10GB @10 =", transfer(10e9, 10))
    print("network 1000/10 =", 1000 / 10)
    print("total (1,1,0) 3 + 80 =", 1 * 3 + 1 * 80 + 0 * 1)
    print("N(q=2,Q=4,T=20,t=2) =", threshold(2, 4, 2, 20))
    print("N(q=1,Q=10,T=10,t=5) =", threshold(1, 10, 5, 10))
    print("Pr(3,5) =", priority(3, 5), " Pr(8,5) =", priority(8, 5))
    print("three jobs one user =", queue_priorities([("u", 1)] * 3, {"u": 1}))
    print("A q3 / B q1 =", queue_priorities([("A", 1), ("B", 1)], {"A": 3, "B": 1}))
    print("four jobs then 8-proc second user =",
          queue_priorities([("u1", 1)] * 4 + [("u2", 8)], {"u1": 1, "u2": 1}))
    print("congestion (10-4)/10 =", (10 - 4) / 10)
    print("rr 5 sites 7 jobs =", rr(["s1", "s2", "s3", "s4", "s5"], 7))
    print("flop argmax [10,50,20] -> index", max(range(3), key=lambda i: [10, 50, 20][i]))
    print("flop messages per job, 5 sites =", 2 * 5)
    print("poll 4 peers messages =", 4 * 2)
    print("jobs ahead of 0.1 in [0.4, 0.0, -0.375] =", sum(1 for p in [0.4, 0.0, -0.375] if p >= 0.1))
    print("migrate: local(10,100) A(2,50) B(2,70) ->",
          min([("A", 2, 50), ("B", 2, 70)], key=lambda x: (x[1], x[2], x[0]))[0])
    print("SJF mean wait [20,100,444,555,20] =", mean_wait(sorted([20, 100, 444, 555, 20])),
          " brute =", brute_min_wait([20, 100, 444, 555, 20]))
    # hand event traces
    print("1 job 3 MFLOP @1 MFLOPS completes at", 3 / 1)
    print("2 one-node 3 s jobs on one node complete at", [3, 6])


if __name__ == "__main__":
    main()
