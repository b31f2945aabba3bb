"""Kaehler differentials of a rational function field in characteristic p:
exterior derivative, logarithmic differentials, wedge products, the
coefficient-wise a -> a^p - a operator on symbol presentations, and the
exact verification of the identity chain behind symbol triviality."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactfield import GF, RationalFunctionField, RatFunc


class ZeroArgument(ValueError):
    """dlog of zero."""


class DegreeOverflow(ValueError):
    """Wedge degree exceeds the number of variables."""


class DegreeMismatch(ValueError):
    """Certificate parts of inconsistent degrees."""


class NotInSymbolForm(TypeError):
    """Coefficient-wise operator applied to a raw differential form."""


class IdentityFailed(AssertionError):
    """An identity in the verification chain failed (implementation bug)."""


class DiffForm:
    """Element of Omega^n over a rational function field.

    terms maps strictly increasing index tuples (0-based variable indices)
    to nonzero RatFunc coefficients; degree-0 forms use the empty tuple.
    """

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx, degree, terms):
        self.ctx = ctx
        self.degree = degree
        clean = {}
        for idx, c in terms.items():
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad index tuple {idx} for degree {degree}")
            if not c.is_zero():
                clean[idx] = c
        self.terms = clean

    @classmethod
    def zero(cls, ctx, degree=0):
        return cls(ctx, degree, {})

    @classmethod
    def from_scalar(cls, f):
        return cls(f.ctx, 0, {(): f})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DegreeMismatch("adding forms of different degree")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            v = out.get(idx)
            s = c if v is None else v + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return DiffForm(self.ctx, self.degree, out)

    def __neg__(self):
        return DiffForm(self.ctx, self.degree,
                        {idx: -c for idx, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = self.ctx.coerce(f)
        if f.is_zero():
            return DiffForm.zero(self.ctx, self.degree)
        return DiffForm(self.ctx, self.degree,
                        {idx: c * f for idx, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, DiffForm) and self.ctx == other.ctx
                and (self.terms == other.terms)
                and (self.degree == other.degree or not self.terms))

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ctx.names
        parts = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            dx = "^".join(f"d{names[i]}" for i in idx)
            if not idx:
                parts.append(f"{c!r}")
            else:
                parts.append(f"({c!r}) {dx}")
        return " + ".join(parts)


def _insert_index(j, idx):
    """Sign and sorted tuple for dx_j ^ dx_idx, or None if j in idx."""
    if j in idx:
        return None
    pos = 0
    while pos < len(idx) and idx[pos] < j:
        pos += 1
    sign = -1 if pos % 2 else 1
    return sign, idx[:pos] + (j,) + idx[pos:]


def _merge_indices(idx1, idx2):
    """Sign and merged tuple for dx_idx1 ^ dx_idx2, or None on repeats."""
    sign = 1
    out = idx1
    for j in idx2:
        if j in out:
            return None
        pos = 0
        while pos < len(out) and out[pos] < j:
            pos += 1
        # appending dx_j and moving it left past len(out) - pos factors
        if (len(out) - pos) % 2:
            sign = -sign
        out = out[:pos] + (j,) + out[pos:]
    return sign, out


def d(omega):
    """Exterior derivative; accepts a RatFunc (treated as a 0-form)."""
    if isinstance(omega, RatFunc):
        omega = DiffForm.from_scalar(omega)
    ctx = omega.ctx
    out = {}
    for idx, c in omega.terms.items():
        for j in range(ctx.nvars):
            dc = c.derivative(j)
            if dc.is_zero():
                continue
            r = _insert_index(j, idx)
            if r is None:
                continue
            sign, nidx = r
            term = dc if sign == 1 else -dc
            v = out.get(nidx)
            s = term if v is None else v + term
            if s.is_zero():
                out.pop(nidx, None)
            else:
                out[nidx] = s
    return DiffForm(ctx, omega.degree + 1, out)


def dlog(f):
    """Logarithmic differential df/f of a nonzero rational function."""
    if f.is_zero():
        raise ZeroArgument("dlog(0) is undefined")
    ctx = f.ctx
    out = {}
    inv = f.inverse()
    for j in range(ctx.nvars):
        c = f.derivative(j)
        if not c.is_zero():
            out[(j,)] = c * inv
    return DiffForm(ctx, 1, out)


def wedge(omega1, omega2):
    """Wedge product of two differential forms."""
    ctx = omega1.ctx
    deg = omega1.degree + omega2.degree
    if deg > ctx.nvars and omega1.terms and omega2.terms:
        raise DegreeOverflow(
            f"degree {deg} exceeds {ctx.nvars} variables")
    out = {}
    for i1, c1 in omega1.terms.items():
        for i2, c2 in omega2.terms.items():
            r = _merge_indices(i1, i2)
            if r is None:
                continue
            sign, idx = r
            term = c1 * c2
            if sign == -1:
                term = -term
            v = out.get(idx)
            s = term if v is None else v + term
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return DiffForm(ctx, deg, out)


def wedge_all(forms, ctx=None):
    """Wedge of a sequence of forms; empty product is the 0-form 1."""
    forms = list(forms)
    if not forms:
        if ctx is None:
            raise ValueError("empty wedge needs a context")
        return DiffForm.from_scalar(ctx.one())
    out = forms[0]
    for w in forms[1:]:
        out = wedge(out, w)
    return out


class SymbolExpr:
    """A symbol a * dlog(b1) ^ ... ^ dlog(bn); with as_slot absent it is a
    pure logarithmic form (coefficient 1)."""

    __slots__ = ("ctx", "as_slot", "log_slots")

    def __init__(self, ctx, as_slot, log_slots):
        self.ctx = ctx
        self.as_slot = None if as_slot is None else ctx.coerce(as_slot)
        slots = tuple(ctx.coerce(b) for b in log_slots)
        for b in slots:
            if b.is_zero():
                raise ZeroArgument("log slot must be nonzero")
        self.log_slots = slots

    @property
    def degree(self):
        return len(self.log_slots)

    def expand(self):
        """The underlying differential form."""
        base = wedge_all([dlog(b) for b in self.log_slots],
                         ctx=self.ctx)
        if self.as_slot is None:
            return base
        return base.scale(self.as_slot)

    def __repr__(self):
        head = "" if self.as_slot is None else f"{self.as_slot!r} "
        body = " ^ ".join(f"dlog({b!r})" for b in self.log_slots)
        return head + (body or "1")


def artin_schreier(sym):
    """Coefficient-wise a -> a^p - a on a symbol (or list of symbols),
    returned as a differential form of the same degree."""
    if isinstance(sym, DiffForm):
        raise NotInSymbolForm(
            "operator is defined on symbol presentations, not raw forms")
    if isinstance(sym, SymbolExpr):
        sym = [sym]
    syms = list(sym)
    for s in syms:
        if not isinstance(s, SymbolExpr):
            raise NotInSymbolForm(f"not a symbol: {s!r}")
    if not syms:
        raise NotInSymbolForm("empty symbol list")
    ctx = syms[0].ctx
    total = None
    for s in syms:
        a = s.as_slot if s.as_slot is not None else ctx.one()
        shifted = a.frobenius() - a
        term = wedge_all([dlog(b) for b in s.log_slots],
                         ctx=ctx).scale(shifted)
        total = term if total is None else total + term
    return total


class TrivialityCertificate:
    """Witness that target = d(exact_part) + (a^p - a applied to as_part)."""

    __slots__ = ("target", "exact_part", "as_part")

    def __init__(self, target, exact_part, as_part=()):
        self.target = target
        self.exact_part = exact_part
        self.as_part = tuple(as_part)

    def __repr__(self):
        return (f"TrivialityCertificate(target deg {self.target.degree}, "
                f"exact deg {self.exact_part.degree}, "
                f"{len(self.as_part)} symbol terms)")


def check_certificate(cert):
    """True iff the certificate identity holds exactly in Omega^n."""
    target = cert.target
    exact = cert.exact_part
    if not exact.is_zero() and exact.degree != target.degree - 1:
        raise DegreeMismatch(
            f"exact part degree {exact.degree}, want {target.degree - 1}")
    total = d(exact) if not exact.is_zero() else DiffForm.zero(
        target.ctx, target.degree)
    if cert.as_part:
        ws = artin_schreier(cert.as_part)
        if not ws.is_zero() and ws.degree != target.degree:
            raise DegreeMismatch(
                f"as part degree {ws.degree}, want {target.degree}")
        total = total + ws
    return total == target


# ---------------------------------------------------------------------------
# the identity chain


@dataclass
class ChainStep:
    name: str
    description: str
    passed: bool


@dataclass
class ChainReport:
    p: int
    delta_slots: int
    steps: list = field(default_factory=list)

    @property
    def passed(self):
        return all(s.passed for s in self.steps)

    def lines(self):
        out = [f"identity chain over F_{self.p}"
               f"(alpha,beta,gamma{',delta..' if self.delta_slots else ''})"
               f" with {self.delta_slots} delta slot(s)"]
        for s in self.steps:
            mark = "ok  " if s.passed else "FAIL"
            out.append(f"  [{mark}] {s.name}: {s.description}")
        out.append("result: " + ("all identities hold" if self.passed
                                 else "IDENTITY FAILURE"))
        return out


def verify_triviality_chain(p, delta_slots=0, strict=False):
    """Verify, as exact identities of differential forms over the generic
    field F_p(alpha, beta, gamma, delta_1..delta_k), the rewriting chain that
    trivialises the wedge of two symbols sharing their other slots:

      (i)   alpha dlog(beta)^dlog(gamma)
               = alpha dlog(beta/gamma)^dlog(v)      with v = t^p gamma + beta
      (ii)  dlog(beta/gamma) = dlog(beta) - dlog(gamma), giving the two-term
            decomposition of (i)
      (iii) v dlog(v) = d(v)
      (iv)  d(t^p) = 0

    all wedged with dlog(delta_1)^..^dlog(delta_k) on both sides, where
    t = alpha + (alpha - beta)/gamma.
    """
    names = ["alpha", "beta", "gamma"] + [
        f"delta{i+1}" for i in range(delta_slots)]
    ctx = RationalFunctionField(GF(p), names)
    alpha, beta, gamma = ctx.var(0), ctx.var(1), ctx.var(2)
    deltas = [ctx.var(3 + i) for i in range(delta_slots)]

    t = alpha + (alpha - beta) / gamma
    v = t ** p * gamma + beta
    big_delta = wedge_all([dlog(dl) for dl in deltas], ctx=ctx)

    def with_delta(form):
        # wedging the shared slots on the right keeps the Leibniz sign of
        # d(v * Delta) = dv ^ Delta transparent for every p
        return wedge(form, big_delta)

    report = ChainReport(p=p, delta_slots=delta_slots)

    lhs = with_delta(wedge(dlog(beta), dlog(gamma)).scale(alpha))
    rhs = with_delta(wedge(dlog(beta / gamma), dlog(v)).scale(alpha))
    report.steps.append(ChainStep(
        "slot-exchange",
        "alpha dlog(beta)^dlog(gamma) = alpha dlog(beta/gamma)^dlog(v)",
        lhs == rhs))

    expand_ok = dlog(beta / gamma) == dlog(beta) - dlog(gamma)
    term1 = with_delta(wedge(dlog(beta), dlog(v)).scale(alpha))
    term2 = with_delta(wedge(dlog(gamma), dlog(v)).scale(alpha))
    report.steps.append(ChainStep(
        "two-term decomposition",
        "dlog(beta/gamma) expands and splits the class into two wedge terms",
        expand_ok and rhs == term1 - term2))

    target = with_delta(dlog(v).scale(v))
    exact = wedge(DiffForm.from_scalar(v), big_delta)
    cert_ok = check_certificate(TrivialityCertificate(target, exact))
    report.steps.append(ChainStep(
        "exactness of v dlog(v)",
        "v dlog(v) = d(v), certified as an explicit exact form",
        dlog(v).scale(v) == d(v) and cert_ok))

    report.steps.append(ChainStep(
        "p-th powers are closed",
        "d(t^p) = 0",
        d(t ** p).is_zero()))

    if strict and not report.passed:
        bad = next(s for s in report.steps if not s.passed)
        raise IdentityFailed(bad.name)
    return report
