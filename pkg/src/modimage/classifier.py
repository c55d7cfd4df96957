"""Decision procedures for mod-l Galois image classification.

Given an elliptic curve over Q and a prime l, determine the image of the
mod-l representation up to conjugacy in GL_2(F_l):

* non-CM curves at l <= 13 are classified by walking the genus-zero cover
  table in order of decreasing index, refining a cover hit to a twist
  sublabel with the curve parametrized by the matched value;
* l = 11 additionally tests membership in the image of the rank-one
  nonsplit normalizer curve through its plane quadratic criterion;
* at l = 13 and l >= 17 the remaining open containments (nonsplit or
  split normalizer images with no known rational points) give verdicts
  conditional on the surjectivity conjecture, upgraded to proven when
  Frobenius traces certify non-containment in every open possibility;
* CM curves are classified by the discriminant table rules, including
  the mod-9 refinements for j = 0 and the twist tests at l = D.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .exactmath import (Incomplete, factor, is_cube, is_probable_prime,
                        is_square, legendre, primes_up_to)
from .ec import (ShortCurve, WeierstrassCurve, ap, integral_model,
                 short_model, twist_test)
from .polyq import INFINITY, Poly, evaluate, rational_roots
from .tables import (CMEntry, EXCEPTIONAL_LOOKUP, cm_entry, nonsplit11,
                     prime_table, supported_primes)

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 37)
DEFAULT_FROBENIUS_BOUND = 1000

STATUS_PROVEN = "proven"
STATUS_CONDITIONAL = "conditional(BPR-conjecture)"

# canonical order for certificate lists
MAXIMAL_KINDS = ("Borel", "SplitNormalizer", "NonsplitNormalizer",
                 "Exceptional")


class FactorizationIncomplete(ArithmeticError):
    """The discriminant would not factor under the trial bound."""


@dataclass(frozen=True)
class Certificate:
    """A Frobenius witness (a_p, p) mod l incompatible with a maximal
    subgroup type."""
    kind: str
    p: int
    trace: int
    det: int


@dataclass(frozen=True)
class ImageResult:
    """Mod-l verdict for one prime.

    label is "GL2" or a group label from the tables; witness_t is the
    matched cover parameter when the verdict came from a cover hit;
    possible lists the alternatives a conditional verdict leaves open.
    """
    prime: int
    label: str
    status: str
    witness_t: object = None
    certificates: Tuple[Certificate, ...] = ()
    possible: Tuple[str, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class Report:
    curve: Optional[WeierstrassCurve]
    j: Fraction
    cm: Optional[CMEntry]
    results: Tuple[ImageResult, ...]

    @property
    def exceptional_primes(self) -> Tuple[int, ...]:
        return tuple(r.prime for r in self.results if r.label != "GL2")


def _lstar(l: int) -> int:
    """The twist discriminant ramified only at l: l for l = 1 mod 4,
    otherwise -l."""
    return l if l % 4 == 1 else -l


# --- the genus-zero walk ----------------------------------------------------

def _cover_parameters(entry, j):
    """Rational t with cover value j, excluded values removed, sorted by
    (denominator, numerator); INFINITY appended when the cover takes the
    value j there."""
    f = entry.cover.num - Poly.const(j) * entry.cover.den
    roots = {t for t in rational_roots(f) if t not in entry.bad_t}
    out = sorted(roots, key=lambda t: (t.denominator, t.numerator))
    if evaluate(entry.cover, INFINITY) == j:
        out.append(INFINITY)
    return out


def _refine(entry, t, E, l):
    """Twist discrimination inside a matched entry: decide between the
    index-two subgroups and the full group.

    The matched parameter pins a curve with the same j-invariant; the
    verdict is the first sublabel when E is isomorphic to it, the second
    when E is its twist by the prime's own discriminant, else the
    ambient label.
    """
    if not entry.subs:
        return entry.label, ""
    if E is None:
        return entry.label, "model required for twist refinement"
    if entry.curve is not None:
        model = entry.curve
    else:
        if t is INFINITY:
            return entry.label, "parameter at infinity; twist refinement skipped"
        A, B = entry.family
        model = ShortCurve(A.evaluate(t), B.evaluate(t))
    if twist_test(model, E, 1):
        return entry.subs[0][0], ""
    if twist_test(model, E, _lstar(l)):
        return entry.subs[1][0], ""
    return entry.label, ""


def nonsplit11_test(j) -> bool:
    """Whether j is the image of an affine rational point of the rank-one
    nonsplit normalizer curve at 11: the criterion quadratic-in-j must
    have a rational root in x."""
    crit = nonsplit11()
    j = Fraction(j)
    f = crit.A * Poly.const(j * j) + crit.B * Poly.const(j) + crit.C
    return bool(rational_roots(f))


def frobenius_noncontainment(E, l: int, bound: int) -> dict:
    """Trace certificates against the maximal subgroup types.

    For each good prime p <= bound compute (t, d) = (a_p, p) mod l. A
    type is ruled out by the first pair incompatible with every element
    of the corresponding subgroup:

    * Borel: t^2 - 4d a nonsquare (no Borel element has irreducible
      characteristic polynomial);
    * split normalizer: t != 0 and t^2 - 4d a nonsquare (the Cartan half
      has square discriminant, the outer coset has trace 0);
    * nonsplit normalizer: t != 0 and t^2 - 4d a nonzero square;
    * exceptional (projectively octahedral): t^2/d outside {0, 1, 2, 4},
      the traces of projective order <= 4.

    Returns {kind: Certificate} for the types ruled out.
    """
    if l < 5:
        raise ValueError("certificates are defined for l >= 5")
    M, _ = integral_model(E)
    disc = int(M.discriminant())
    found = {}
    for p in primes_up_to(bound):
        if (l * disc) % p == 0:
            continue
        t = ap(M, p) % l
        d = p % l
        v = (t * t - 4 * d) % l
        chi = 0 if v == 0 else legendre(v, l)
        u = t * t * pow(d, -1, l) % l
        if "Borel" not in found and chi == -1:
            found["Borel"] = Certificate("Borel", p, t, d)
        if "SplitNormalizer" not in found and t != 0 and chi == -1:
            found["SplitNormalizer"] = Certificate("SplitNormalizer", p, t, d)
        if "NonsplitNormalizer" not in found and t != 0 and chi == 1:
            found["NonsplitNormalizer"] = Certificate(
                "NonsplitNormalizer", p, t, d)
        if "Exceptional" not in found and u not in (0, 1, 2, 4):
            found["Exceptional"] = Certificate("Exceptional", p, t, d)
        if len(found) == 4:
            break
    return found


def _ordered_certs(found: dict) -> Tuple[Certificate, ...]:
    return tuple(found[k] for k in MAXIMAL_KINDS if k in found)


def _tail_13(E, frobenius_bound: int) -> ImageResult:
    """No cover matched at 13: the image is full unless it hides in a
    normalizer, which conjecturally never happens for non-CM curves.
    Frobenius certificates against both normalizers upgrade the verdict
    to proven."""
    possible = ("13.Ns", "13.Nns")
    if E is None:
        return ImageResult(13, "GL2", STATUS_CONDITIONAL, possible=possible,
                           note="model required for Frobenius certificates")
    found = frobenius_noncontainment(E, 13, frobenius_bound)
    certs = _ordered_certs(found)
    open_labels = tuple(
        lab for lab, kind in (("13.Ns", "SplitNormalizer"),
                              ("13.Nns", "NonsplitNormalizer"))
        if kind not in found)
    if not open_labels:
        return ImageResult(13, "GL2", STATUS_PROVEN, certificates=certs)
    return ImageResult(13, "GL2", STATUS_CONDITIONAL, certificates=certs,
                       possible=open_labels)


def _tail_large(E, l: int, frobenius_bound: int) -> ImageResult:
    """No exceptional j at l >= 17: the only open alternative is the
    nonsplit normalizer (with its index-3 subgroup when l = 2 mod 3), so
    one certificate against it proves surjectivity."""
    possible = (f"{l}.Nns",)
    if l % 3 == 2:
        possible = (f"{l}.Nns", f"{l}.Nns-index3")
    if E is None:
        return ImageResult(l, "GL2", STATUS_CONDITIONAL, possible=possible,
                           note="model required for Frobenius certificates")
    found = frobenius_noncontainment(E, l, frobenius_bound)
    certs = _ordered_certs(found)
    if "NonsplitNormalizer" in found:
        return ImageResult(l, "GL2", STATUS_PROVEN, certificates=certs)
    return ImageResult(l, "GL2", STATUS_CONDITIONAL, certificates=certs,
                       possible=possible)


def classify_prime_noncm(E, j, l: int, frobenius_bound: int = DEFAULT_FROBENIUS_BOUND,
                         check_all_roots: bool = False) -> ImageResult:
    """Image of the mod-l representation for a non-CM j-invariant.

    E may be None (classification from j alone); twist refinement and
    Frobenius certification then degrade with a note. The walk takes the
    first matching entry in the table's decreasing-index order.
    """
    j = Fraction(j)
    if l in supported_primes():
        for entry in prime_table(l).entries:
            if entry.criterion == "nonsplit-fiber":
                if nonsplit11_test(j):
                    return ImageResult(l, entry.label, STATUS_PROVEN)
                continue
            if entry.jvals is not None:
                if j not in entry.jvals:
                    continue
                label, note = _refine(entry, None, E, l)
                return ImageResult(l, label, STATUS_PROVEN, note=note)
            params = _cover_parameters(entry, j)
            if not params:
                continue
            label, note = _refine(entry, params[0], E, l)
            if check_all_roots:
                for t in params[1:]:
                    if t is INFINITY:
                        continue
                    other, _ = _refine(entry, t, E, l)
                    if other != label:
                        raise AssertionError(
                            f"{entry.label}: parameters {params[0]} and {t} "
                            f"disagree: {label} vs {other}")
            return ImageResult(l, label, STATUS_PROVEN, witness_t=params[0],
                               note=note)
        if l == 13:
            return _tail_13(E, frobenius_bound)
        return ImageResult(l, "GL2", STATUS_PROVEN)
    label = EXCEPTIONAL_LOOKUP.get((l, j))
    if label is not None:
        return ImageResult(l, label, STATUS_PROVEN)
    return _tail_large(E, l, frobenius_bound)


# --- CM curves ---------------------------------------------------------------

# j-invariants whose mod-2 image is the order-2 group, and those with
# full mod-2 image; j = 0 and j = 1728 depend on the model
_MOD2_ORDER2 = frozenset(Fraction(v) for v in (
    54000, 287496, -3375, 16581375, 8000))
_MOD2_FULL = frozenset(Fraction(v) for v in (
    -12288000, -32768, -884736, -884736000, -147197952000,
    -262537412640768000))


def _classify_cm_2(E, entry: CMEntry) -> ImageResult:
    j = entry.j
    if j == 1728:
        d = -short_model(_as_long(E)).A
        label = "2.G1" if is_square(d) else "2.G2"
    elif j == 0:
        d = short_model(_as_long(E)).B
        label = "2.G2" if is_cube(d) else "GL2"
    elif j in _MOD2_ORDER2:
        label = "2.G2"
    elif j in _MOD2_FULL:
        label = "GL2"
    else:
        raise AssertionError(f"CM j-invariant {j} missing from mod-2 buckets")
    return ImageResult(2, label, STATUS_PROVEN)


def _classify_cm_j0(E, l: int) -> ImageResult:
    """j = 0 at an odd prime: sextic twists split the normalizer verdict
    by l mod 9, with an index-3 drop exactly on the twist orbit of
    y^2 = x^3 + 16 l^e."""
    d = short_model(_as_long(E)).B
    if l == 3:
        sq = is_square(d) or is_square(-3 * d)
        if is_cube(-4 * d):
            label = "3.H1.1" if sq else "3.G1"
        elif is_square(d):
            label = "3.H3.1"
        elif is_square(-3 * d):
            label = "3.H3.2"
        else:
            label = "3.G3"
        return ImageResult(3, label, STATUS_PROVEN)
    m = l % 9
    if m == 1:
        return ImageResult(l, f"{l}.Ns", STATUS_PROVEN)
    if m == 8:
        return ImageResult(l, f"{l}.Nns", STATUS_PROVEN)
    if m in (4, 7):
        # (l - 1)/3 = e mod 3 with e in {1, 2}
        e = 1 if m == 4 else 2
        base, drop = f"{l}.Ns", f"{l}.Ns-index3"
    else:
        # (l + 1)/3 = -e mod 3 with e in {1, 2}
        e = 2 if m == 2 else 1
        base, drop = f"{l}.Nns", f"{l}.Nns-index3"
    twisted = twist_test(ShortCurve(0, 16 * l ** e), _as_long(E), 1)
    return ImageResult(l, drop if twisted else base, STATUS_PROVEN)


def _as_long(E):
    return E.to_long() if isinstance(E, ShortCurve) else E


def classify_cm(E, l: int, entry: CMEntry) -> ImageResult:
    """Image of the mod-l representation of a CM curve.

    E may be None only where the verdict depends on j alone (the mod-2
    buckets away from j in {0, 1728}, and the normalizer verdict at
    primes not dividing the CM discriminant); elsewhere the model
    decides among twists.
    """
    j = entry.j
    if l == 2:
        if j in (0, 1728) and E is None:
            raise ValueError("model required for j in {0, 1728}")
        return _classify_cm_2(E, entry)
    if j == 0:
        if E is None:
            raise ValueError("model required for j = 0")
        return _classify_cm_j0(E, l)
    if l == entry.field_disc:
        if E is None:
            return ImageResult(l, f"{l}.CM.G", STATUS_PROVEN,
                               note="model required for twist refinement")
        if twist_test(entry.model, _as_long(E), 1):
            label = f"{l}.CM.H1"
        elif twist_test(entry.model, _as_long(E), -l):
            label = f"{l}.CM.H2"
        else:
            label = f"{l}.CM.G"
        return ImageResult(l, label, STATUS_PROVEN)
    side = legendre(-entry.field_disc, l)
    label = f"{l}.Ns" if side == 1 else f"{l}.Nns"
    return ImageResult(l, label, STATUS_PROVEN)


# --- entry points ------------------------------------------------------------

def _checked_primes(primes):
    if primes is None:
        return DEFAULT_PRIMES
    out = []
    for l in primes:
        l = int(l)
        if l < 2 or not is_probable_prime(l):
            raise ValueError(f"{l} is not prime")
        if l not in out:
            out.append(l)
    return tuple(sorted(out))


def classify(E: WeierstrassCurve, primes=None,
             frobenius_bound: int = DEFAULT_FROBENIUS_BOUND,
             check_all_roots: bool = False) -> Report:
    """Classify the mod-l image of E at every requested prime."""
    E = _as_long(E)
    primes = _checked_primes(primes)
    j = E.j_invariant()
    entry = cm_entry(j)
    results = []
    for l in primes:
        if entry is not None:
            results.append(classify_cm(E, l, entry))
        else:
            results.append(classify_prime_noncm(
                E, j, l, frobenius_bound, check_all_roots))
    return Report(E, j, entry, tuple(results))


def classify_from_j(j, primes=None,
                    frobenius_bound: int = DEFAULT_FROBENIUS_BOUND) -> Report:
    """Classify from the j-invariant alone.

    Twist refinement needs a model, so verdicts stay at the plus-minus
    level with an explanatory note. j = 0 and j = 1728 are rejected:
    every rule for them reads the model.
    """
    j = Fraction(j)
    primes = _checked_primes(primes)
    entry = cm_entry(j)
    if entry is not None and j in (0, 1728):
        raise ValueError(f"j = {j} needs a curve model; twists with this "
                         "j-invariant have different images")
    results = []
    for l in primes:
        if entry is not None:
            results.append(classify_cm(None, l, entry))
        else:
            results.append(classify_prime_noncm(None, j, l, frobenius_bound))
    return Report(None, j, entry, tuple(results))


# --- twist sets --------------------------------------------------------------

def twist_set(E, l: int, r: int, factor_bound: int = 10 ** 6) -> set:
    """Quadratic twist discriminants of E not yet excluded by traces.

    Candidates are the signed squarefree integers supported on l and the
    primes of the integral model's discriminant. A discriminant d is
    excluded by a good prime p = 1 mod l with a_p = -2 (d|p) mod l; the
    returned set shrinks toward the true twist set as r grows.
    """
    if l == 2 or not is_probable_prime(l):
        raise ValueError("twist sets are defined for odd primes")
    M, _ = integral_model(_as_long(E))
    disc = int(M.discriminant())
    fac = factor(abs(l * disc), factor_bound)
    if isinstance(fac, Incomplete):
        raise FactorizationIncomplete(
            f"cofactor {fac.cofactor} of the discriminant resists trial "
            f"division up to {factor_bound}")
    support = sorted(set(fac) | {l})
    candidates = [1]
    for q in support:
        candidates += [d * q for d in candidates]
    candidates += [-d for d in candidates]
    survivors = set()
    tests = [p for p in primes_up_to(r)
             if p % l == 1 and (l * disc) % p != 0]
    traces = {p: ap(M, p) for p in tests}
    for d in candidates:
        if all((traces[p] + 2 * legendre(d, p)) % l != 0 for p in tests):
            survivors.add(d)
    return survivors
