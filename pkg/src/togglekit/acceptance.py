"""Acceptance suite: one callable per criterion, each returning a result
with a pass flag and a one-line detail.  ``run_all`` prints one line per
criterion and is what the CLI ``verify`` subcommand executes.

Two criteria need context:

* Criterion 10 is implemented at its stated bound (flip-angle scale from
  0.8 to 1.2 in 0.01 steps, residual rotation angle <= 5 degrees) and is
  EXPECTED TO FAIL at the interval edges: the compensated axis-cycling
  block reaches 6.61 degrees at +/-20%.  The 5-degree bound holds on
  +/-17%, and the axis-direction and rotation-angle errors separately stay
  below 5 degrees over the full range.  The criterion is kept faithful
  rather than weakened.

* Criterion 13's inverted-flip-angle relation for anti-DD is probed at
  0.9 and 0.1 times the nominal angle: at exactly the nominal angle the
  first-order centroid of any nested dual pair vanishes identically
  (nesting distributes over the toggling map), so a probe pinned there
  cannot distinguish broadband from narrowband behavior.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import averaging, catalog, ddsim, profiles, rotcore, search, seqmodel, toggling, virtualmas


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _result(number: int, name: str, passed, detail: str) -> CriterionResult:
    return CriterionResult(number, name, bool(passed), detail)


def _wrap(vals: np.ndarray) -> np.ndarray:
    """Distance of angles from 0 modulo 2pi."""
    return np.abs(np.angle(np.exp(1j * np.asarray(vals, dtype=float))))


def criterion_1() -> CriterionResult:
    """Cyclicity: M^m restores any uniform 2pi/m sequence, 1000 samples per
    (n <= 8, m in 2..6), deviation < 1e-9, runtime < 10 s."""
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 9):
        for m in range(2, 7):
            axes = rng.normal(size=(1000, n, 3))
            axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
            betas = np.full(n, 2.0 * np.pi / m)
            cur = axes
            for _ in range(m):
                cur = toggling.toggle_axes(cur, betas)
            worst = max(worst, float(np.max(np.abs(cur - axes))))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 10.0
    return _result(1, "cyclicity theorem", ok,
                   f"max deviation {worst:.3e} over 40k sequences, "
                   f"runtime within 10 s: {elapsed < 10.0}")


def criterion_2() -> CriterionResult:
    """Closed form equals iterated map, incl. mixed-angle lcm cycles."""
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 9))
        axes = rng.normal(size=(n, 3))
        axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
        betas = rng.uniform(0.3, 2 * np.pi, size=n)
        s = seqmodel.RotationSequence(
            "r", tuple(seqmodel.PulseElement(b, a) for b, a in zip(betas, axes)))
        for m in (1, 2, 3, 5):
            it = toggling.toggling_map_iter(s, m)
            cf = toggling.closed_form_toggling(s, m)
            worst = max(worst, float(np.max(np.abs(it.axes - cf.axes))))
    # lcm case: angles 2pi/3 and 2pi/4 mixed return at m = 12
    axes = rng.normal(size=(6, 3))
    axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
    betas = np.array([2 * np.pi / 3, np.pi / 2, 2 * np.pi / 3, np.pi / 2, np.pi / 2, 2 * np.pi / 3])
    s = seqmodel.RotationSequence(
        "mix", tuple(seqmodel.PulseElement(b, a) for b, a in zip(betas, axes)))
    ret = float(np.max(np.abs(toggling.toggling_map_iter(s, 12).axes - s.axes)))
    worst = max(worst, ret)
    return _result(2, "closed form vs iteration", worst < 1e-9,
                   f"max deviation {worst:.3e} (lcm-12 return {ret:.3e})")


def criterion_3() -> CriterionResult:
    """Toggling phases of the narrowband TPG pulse equal the broadband F1
    phases plus 4*arccos(-1/4), element-wise."""
    phi = catalog.PHI_QUARTER
    mapped = toggling.phase_map(catalog.nb1_tpg().phases)
    dev = float(np.max(_wrap(mapped - catalog.f1().phases - 4.0 * phi)))
    return _result(3, "F1/NB1 duality", dev < 1e-12, f"max phase deviation {dev:.3e}")


def criterion_4() -> CriterionResult:
    """Glide reflection on 721-point grids for the F1/NB1 pair and the
    Vitanov pairs n in {3,5,7,9,11}."""
    worst = 0.0
    pairs = [(catalog.f1(),
              seqmodel.global_phase_shift(catalog.nb1_tpg(), 4.0 * catalog.PHI_QUARTER))]
    pairs += [(catalog.bprime(n), catalog.nprime(n)) for n in (3, 5, 7, 9, 11)]
    for s, dual in pairs:
        worst = max(worst, profiles.glide_reflection_check(s, dual))
    return _result(4, "glide reflection", worst < 1e-9, f"max deviation {worst:.3e}")


def criterion_5() -> CriterionResult:
    """Duality of phase differences for scaled Vitanov pairs."""
    ok = True
    for n in (3, 5, 7, 9, 11):
        for k in (2, 4):
            ok &= toggling.finite_difference_duality_check(
                catalog.nprime(n, k), catalog.bprime(n, k))
    return _result(5, "duality of differences", ok,
                   "nprime/bprime pairs for n in 3..11, k in {2,4}")


def criterion_6() -> CriterionResult:
    """T1 and PB1 map onto their own axis lists under the toggling map."""
    ok_t1 = toggling.half_band_check(catalog.t1(), 1e-12)
    ok_pb1 = toggling.half_band_check(catalog.pb1(), 1e-12)
    sane = not toggling.half_band_check(catalog.f1(), 1e-12)
    return _result(6, "half-band sequences", ok_t1 and ok_pb1 and sane,
                   f"t1 {ok_t1}, pb1 {ok_pb1}, f1 excluded {sane}")


_AUDIT_SPECS = ["f1", "nb1_tpg", "t1", "pb1", "nprime(5)", "nprime(7)", "bprime(5)",
                "bprime(7)", "nest_bn(3,3)", "nest_nb(3,3)", "nest_bn(3,5)",
                "nest_nb(5,3)", "i34", "p34", "derome", "p46", "p46_prime",
                "xy4", "u5", "kdd20", "tycko"]


def criterion_7() -> CriterionResult:
    """Balance audit: broadband entries have balanced toggled axes at the
    nominal angle, narrowband entries balanced plain axes; universal and
    bandpass entries both."""
    worst = 0.0
    failures = []
    for spec in _AUDIT_SPECS:
        s = catalog.named(spec)
        role = catalog.entry_info(spec).role
        c0 = float(np.linalg.norm(averaging.centroid(s.axes)))
        c1 = float(np.linalg.norm(averaging.centroid(toggling.toggling_map(s).axes)))
        need = {"broadband": [c1], "narrowband": [c0],
                "universal": [c0, c1], "bandpass": [c0, c1]}.get(role, [])
        for v in need:
            worst = max(worst, v)
            if v >= 1e-9:
                failures.append(spec)
    return _result(7, "balance audit", not failures,
                   f"{len(_AUDIT_SPECS)} entries, worst centroid {worst:.3e}"
                   + (f", failures {failures}" if failures else ""))


def criterion_8() -> CriterionResult:
    """Order-reversal symmetry rules and the numeric oracle match."""
    rng = np.random.default_rng(808)
    worst_sym = worst_anti = 0.0
    for _ in range(100):
        k = int(rng.integers(2, 5))
        half = rng.normal(size=(k, 3))
        half /= np.linalg.norm(half, axis=-1, keepdims=True)
        sym = averaging.average_orders(np.vstack([half, half[::-1]]))
        anti = averaging.average_orders(np.vstack([half, -half[::-1]]))
        worst_sym = max(worst_sym, float(np.linalg.norm(sym.order2)))
        worst_anti = max(worst_anti, float(np.linalg.norm(anti.order1)),
                         float(np.linalg.norm(anti.order2)),
                         float(np.linalg.norm(anti.order3)))
    worst_rel = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 7))
        axes = rng.normal(size=(n, 3))
        axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
        beta = float(rng.uniform(0.5, np.pi))
        s = seqmodel.sequence_from_axes("r", beta, axes)
        toggled = toggling.toggle_axes(s.axes, s.betas)
        alg = averaging.average_orders(toggled)
        num = averaging.numeric_error_expansion(s, beta)
        for a, b in ((alg.order1, num.order1), (alg.order2, num.order2),
                     (alg.order3, num.order3)):
            worst_rel = max(worst_rel,
                            float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b))))))
    ok = worst_sym < 1e-10 and worst_anti < 1e-10 and worst_rel < 1e-6
    return _result(8, "average-order symmetry rules", ok,
                   f"sym order2 {worst_sym:.2e}, antisym {worst_anti:.2e}, "
                   f"oracle rel {worst_rel:.2e}")


def _axes_match_vertices_once(toggled: np.ndarray, vertices: np.ndarray) -> bool:
    """True iff each vertex is hit exactly once by the toggled tuple."""
    dots = toggled @ vertices.T
    hits = dots > 1.0 - 1e-9
    return bool(np.all(hits.sum(axis=1) == 1) and np.all(hits.sum(axis=0) == 1))


def _derome_quotient_key(axes: np.ndarray) -> tuple:
    """Canonical key modulo global z-rotation, time reversal, and phase
    negation (the physically trivial relabelings of an rf sequence)."""
    variants = []
    for a in (axes, axes[::-1]):
        for mir in (a, a * np.array([1.0, -1.0, 1.0])):
            variants.append(search._z_canonical(mir))
    return min(variants)


def criterion_9() -> CriterionResult:
    """Search rediscovery of the catalog's compensated m=3 and m=4 gates."""
    t0 = time.perf_counter()
    sq3 = np.sqrt(3.0)
    cyc = rotcore.from_axis_angle(np.array([1.0, 1.0, 1.0]) / sq3, 2.0 * np.pi / 3.0)

    res_a1 = search.enumerate_balanced(search.SearchSpec(search.tetrahedron(), 4, 3, cyc))
    got_p34 = any(seqmodel.sequences_equal(s, catalog.p34()) for s in res_a1)

    pi0 = rotcore.from_axis_angle(rotcore.E_X, np.pi)
    res_a2 = search.enumerate_balanced(search.SearchSpec(search.diagonal_quad(), 4, 3, pi0))
    got_i34 = any(seqmodel.sequences_equal(s, catalog.i34()) for s in res_a2)

    octa = search.octahedron()
    res_b = search.enumerate_balanced(search.SearchSpec(octa, 6, 4, "equatorial_pi"))
    derome = catalog.derome()
    got_derome = any(seqmodel.sequences_equal(s, derome) for s in res_b)
    # the uniqueness claim holds for rf sequences built on the full vertex
    # set, modulo z-rotation plus the reversal/mirror relabelings
    rf = [s for s in res_b
          if s.is_equatorial(1e-9)
          and _axes_match_vertices_once(toggling.toggling_map(s).axes, octa.vertices)]
    keys = {_derome_quotient_key(s.axes) for s in rf}
    unique = len(keys) == 1 and keys == {_derome_quotient_key(derome.axes)}

    res_c = search.nonequatorial_search(search.SearchSpec(octa, 6, 4, "axis_cycling"))
    got_p46 = any(seqmodel.sequences_equal(s, catalog.p46()) for s in res_c)
    got_p46p = any(seqmodel.sequences_equal(s, catalog.p46_prime()) for s in res_c)

    elapsed = time.perf_counter() - t0
    ok = (got_p34 and got_i34 and got_derome and unique and got_p46 and got_p46p
          and elapsed < 300.0)
    return _result(9, "search rediscovery", ok,
                   f"p34 {got_p34}, i34 {got_i34}, derome {got_derome} "
                   f"(unique class: {unique}, {len(rf)} rf solutions), "
                   f"p46 {got_p46}, p46' {got_p46p}, desk-scale runtime: {elapsed < 300.0}")


def criterion_10() -> CriterionResult:
    """Compensated axis-cycling error <= 5 degrees over +/-20% flip-angle
    error.  Faithful to the stated bound; see the module docstring."""
    sq3 = np.sqrt(3.0)
    target = rotcore.from_axis_angle(np.array([1.0, 1.0, 1.0]) / sq3, 2.0 * np.pi / 3.0)
    beta = 2.0 * np.pi / 3.0
    p34 = catalog.p34()
    scales = np.arange(0.80, 1.2000001, 0.01)
    errs = np.array([profiles.rotation_error(p34, s * beta, target) for s in scales])
    ok = bool(np.all(errs <= 5.0))
    inside = scales[errs <= 5.0]
    return _result(10, "p34 robustness (5 deg at +/-20%)", ok,
                   f"max {errs.max():.2f} deg at scale {scales[errs.argmax()]:.2f}; "
                   f"<=5 deg holds on [{inside[0]:.2f}, {inside[-1]:.2f}]")


def criterion_11() -> CriterionResult:
    """Wigner matrices: unitarity, homomorphism, Cartesian equivalence."""
    rng = np.random.default_rng(1111)
    t_mat = averaging.spherical_basis_matrix()
    worst_u = worst_h = worst_c = 0.0
    for _ in range(100):
        v1, v2 = rng.normal(size=(2, 3))
        r1 = rotcore.from_axis_angle(v1 / np.linalg.norm(v1), float(rng.uniform(0, np.pi)))
        r2 = rotcore.from_axis_angle(v2 / np.linalg.norm(v2), float(rng.uniform(0, np.pi)))
        prod = rotcore.compose(r2, r1)
        for lam in range(4):
            d1 = averaging.wigner_d(lam, r1)
            worst_u = max(worst_u, float(np.max(np.abs(
                d1 @ d1.conj().T - np.eye(2 * lam + 1)))))
            worst_h = max(worst_h, float(np.max(np.abs(
                averaging.wigner_d(lam, prod) - averaging.wigner_d(lam, r2) @ d1))))
        worst_c = max(worst_c, float(np.max(np.abs(
            averaging.wigner_d(1, r1) - t_mat.conj().T @ r1.as_matrix() @ t_mat))))
    ok = worst_u < 1e-9 and worst_h < 1e-9 and worst_c < 1e-10
    return _result(11, "Wigner-D properties", ok,
                   f"unitarity {worst_u:.2e}, homomorphism {worst_h:.2e}, "
                   f"Cartesian {worst_c:.2e}")


def criterion_12() -> CriterionResult:
    """Virtual MAS: exact rank-2 suppression at the nominal angle; the
    compensated cycle starts at error order >= 2, the bare cycle at 1."""
    k_u = virtualmas.mas_kappa_sweep(False, [1.0])[0].max_abs
    k_c = virtualmas.mas_kappa_sweep(True, [1.0])[0].max_abs
    slope_u, slope_c = virtualmas.suppression_order_slopes()
    ok = k_u < 1e-10 and k_c < 1e-10 and slope_u > 1e-2 and slope_c < 1e-6
    return _result(12, "virtual MAS suppression", ok,
                   f"kappa at nominal {k_u:.2e}/{k_c:.2e}, "
                   f"slopes {slope_u:.3f} vs {slope_c:.2e}")


def criterion_13() -> CriterionResult:
    """Centroid-map ordered relations: UDD pins the centroid near 1 at low
    field frequency; XY4/KDD vanish at the nominal angle for fast fields;
    anti-DD swaps the flip-angle plateaus (probed at 0.9 and 0.1 of the
    nominal angle, since every nested dual pair is exactly balanced at the
    nominal angle itself)."""
    udd10 = catalog.named_dd("udd(10)")
    cm_udd = ddsim.centroid_map(udd10, omega_grid=[0.1 / udd10.total_time],
                                beta_scale_grid=[1.0])
    udd_val = cm_udd.cell(0, 0)

    fast = []
    for name in ("xy4", "kdd20"):
        d = catalog.named_dd(name)
        cm = ddsim.centroid_map(d, omega_grid=[1e12 / d.total_time], beta_scale_grid=[1.0])
        fast.append(cm.cell(0, 0))

    kdd = catalog.named_dd("kdd20")
    anti = ddsim.anti_dd(catalog.named_dd("xy4"), catalog.u5())
    scales = [0.1, 0.9]
    cm_kdd = ddsim.centroid_map(kdd, omega_grid=[0.1 / kdd.total_time],
                                beta_scale_grid=scales)
    cm_anti = ddsim.centroid_map(anti, omega_grid=[0.1 / anti.total_time],
                                 beta_scale_grid=scales)
    inverted = (cm_anti.cell(0, 1) > 2.0 * cm_anti.cell(0, 0)
                and cm_kdd.cell(0, 1) < 0.5 * cm_kdd.cell(0, 0))

    ok = udd_val > 0.9 and max(fast) < 1e-9 and inverted
    return _result(13, "DD map ordered relations", ok,
                   f"UDD low-omega {udd_val:.4f}, fast-field XY4/KDD {max(fast):.2e}, "
                   f"anti-DD near/far {cm_anti.cell(0, 1):.3f}/{cm_anti.cell(0, 0):.3f} "
                   f"vs KDD {cm_kdd.cell(0, 1):.3f}/{cm_kdd.cell(0, 0):.3f}")


def criterion_14() -> CriterionResult:
    """m=2 to m=4 conversion on bprime(5) and bprime(15)."""
    target = rotcore.from_axis_angle(rotcore.E_X, np.pi)
    details = []
    ok = True
    for n in (5, 15):
        out = profiles.convert_m2_to_m4(catalog.bprime(n))
        net_dev = rotcore.rotation_angle_between(target, seqmodel.net_propagator(out))
        c1 = float(np.linalg.norm(averaging.centroid(toggling.toggling_map(out).axes)))
        cls = averaging.symmetry_class(out)
        good = (len(out) == 2 * n and np.allclose(out.betas, np.pi / 2.0)
                and net_dev < 1e-8 and c1 < 1e-9 and cls == "antisymmetric")
        ok &= good
        details.append(f"n={n}: net dev {net_dev:.1e}, |C1| {c1:.1e}, {cls}")
    return _result(14, "m=2 to m=4 conversion", ok, "; ".join(details))


def criterion_15() -> CriterionResult:
    """KDD fixture equals the nested construction; the U5 detuning frame is
    balanced on the even and odd sublists separately."""
    phi_inner = np.array([np.pi / 6, 0.0, np.pi / 2, 0.0, np.pi / 6])
    offsets = np.array([0.0, np.pi / 2, 0.0, np.pi / 2])
    explicit = np.concatenate([phi_inner + off for off in offsets])
    nested = seqmodel.nest(catalog.xy4(), catalog.u5())
    dev_nest = float(np.max(_wrap(nested.phases - explicit)))
    dev_cat = float(np.max(_wrap(catalog.kdd20().phases - explicit)))
    frame = toggling.detuning_frame(catalog.u5())
    even = float(np.linalg.norm(frame.vectors[0::2].mean(axis=0)))
    odd = float(np.linalg.norm(frame.vectors[1::2].mean(axis=0)))
    ok = dev_nest < 1e-12 and dev_cat < 1e-12 and even < 1e-9 and odd < 1e-9
    return _result(15, "KDD fixture and U5 detuning balance", ok,
                   f"phase devs {dev_nest:.1e}/{dev_cat:.1e}, "
                   f"detuning even/odd {even:.2e}/{odd:.2e}")


ALL_CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
                criterion_11, criterion_12, criterion_13, criterion_14, criterion_15]


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        r = fn()
        results.append(r)
        if verbose:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  criterion {r.number:2d} ({r.name}): {r.detail}")
    return results
