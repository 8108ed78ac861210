#include "umbra/logderiv.hpp"

#include <algorithm>

#include "umbra/errors.hpp"

namespace umbra {

namespace {

// Shared truncated-convolution kernel. Every y-coefficient (primal engine) or
// x-coefficient (dual engine) is stored as width slots anchored at its nominal
// extreme degree; anchors add under multiplication, so slot indices add and
// truncating at `width` slots is exact for the slots we keep.
using Slots = std::vector<Rat>;

Slots conv(const Slots& a, const Slots& b, int width) {
    Slots out(width);
    for (int i = 0; i < width; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j < width; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Iterate G <- L * (shift - n) G starting from w0, where (shift G)[k] =
// (k+1) G[k+1] realizes (d/dy - nL) in either variable. Returns the anchored
// slots of xi_M = G_M[0] for M = 0..K.
std::vector<Slots> slot_engine(const std::vector<Slots>& lratio,
                               const std::vector<Slots>& w0, int n, int K, int width) {
    std::vector<Slots> state = w0; // state[k], anchor M + k
    std::vector<Slots> xi;
    xi.reserve(K + 1);
    xi.push_back(state[0]);
    for (int M = 1; M <= K; ++M) {
        int len = static_cast<int>(state.size()) - 1;
        std::vector<Slots> next(len, Slots(width));
        for (int k = 0; k < len; ++k) {
            long factor = k + 1 - n;
            if (factor == 0) continue;
            Slots t = state[k + 1];
            Rat f(factor);
            for (Rat& v : t) v = v * f;
            for (int j = k; j < len; ++j) {
                Slots c = conv(lratio[j - k], t, width);
                for (int i = 0; i < width; ++i)
                    if (!c[i].is_zero()) next[j][i] += c[i];
            }
        }
        state = std::move(next);
        xi.push_back(state.empty() ? Slots(width) : state[0]);
    }
    return xi;
}

std::vector<Rat> assemble_from_slots(const std::vector<Slots>& xi, int H) {
    std::vector<Rat> coeffs(H + 1);
    for (int M = 0; M < static_cast<int>(xi.size()); ++M)
        for (int h = 0; h <= H; ++h) {
            const Rat& v = xi[M][h];
            if (v.is_zero()) continue;
            if (M % 2 == 0)
                coeffs[h] += v;
            else
                coeffs[h] -= v;
        }
    return coeffs;
}

// x-direction division of series whose coefficients are truncated y-series;
// b[0] must be a unit (nonzero constant y-term).
std::vector<YSeries<Rat>> xdiv(const std::vector<YSeries<Rat>>& a,
                               const std::vector<YSeries<Rat>>& b) {
    YSeries<Rat> binv = invert_unit(b[0]);
    std::vector<YSeries<Rat>> c(a.size(), YSeries<Rat>(a[0].order()));
    for (size_t k = 0; k < a.size(); ++k) {
        YSeries<Rat> acc = a[k];
        for (size_t j = 1; j <= k && j < b.size(); ++j)
            acc = acc - b[j] * c[k - j];
        c[k] = acc * binv;
    }
    return c;
}

} // namespace

LogDerivContext build_context(const MonicFamily& fam, int y_order) {
    LemmaReport lr = fam.vanish_lemma_check();
    if (!lr.f0_is_one)
        throw PreconditionViolated("inverse-x expansion needs p_n(0) = 0 for n >= 1");
    int ord = (y_order >= 0) ? y_order : fam.poly_order() - 1;
    if (ord + 1 > fam.poly_order())
        throw InsufficientTable("context order exceeds the family's polynomial extent");

    LogDerivContext ctx(fam);
    ctx.order = ord;
    ctx.Q = gf_Q(fam, ord);
    ctx.Qx = BiSeries(ord);
    ctx.Qy = BiSeries(ord);
    BiSeries Qy_over_x(ord), Qx_over_y(ord);
    for (int k = 0; k <= ord; ++k) {
        Rat ik = factorial(k).inv();
        ctx.Qx.mutable_coeff(k) = fam.p(k).deriv() * ik;
        const XPoly& pk1 = fam.p(k + 1);
        ctx.Qy.mutable_coeff(k) = pk1 * ik;
        Qy_over_x.mutable_coeff(k) = pk1.div_x() * ik;
        Qx_over_y.mutable_coeff(k) = pk1.deriv() * (ik * Rat(k + 1).inv());
    }
    ctx.W_ratio = series_div(ctx.Q, Qy_over_x);
    ctx.w0 = series_div(Qx_over_y, Qy_over_x);
    ctx.h_ser = series_div(Qy_over_x, ctx.Q);
    ctx.d_ser = series_div(Qx_over_y, ctx.Q);
    for (int k = 1; k <= ord; ++k) {
        if (ctx.W_ratio.coeff(k).degree() > k - 1 || ctx.w0.coeff(k).degree() > k - 1 ||
            ctx.h_ser.coeff(k).degree() > k - 1 || ctx.d_ser.coeff(k).degree() > k - 1)
            throw LemmaViolation("ratio coefficient at y^" + std::to_string(k) +
                                 " violates the degree-(k-1) bound");
    }
    if (!ctx.W_ratio.coeff(0).is_monic() || !ctx.w0.coeff(0).is_monic() ||
        ctx.W_ratio.coeff(0).degree() != 0 || ctx.w0.coeff(0).degree() != 0)
        throw LemmaViolation("ratio series must have constant term 1");
    return ctx;
}

std::vector<XPoly> neumann_xi(const LogDerivContext& ctx, int n, int K) {
    if (ctx.order < K + 2)
        throw OrderExhausted("need y-order >= K + 2, have " + std::to_string(ctx.order));
    std::vector<XPoly> state(ctx.order + 1);
    for (int k = 0; k <= ctx.order; ++k) state[k] = ctx.w0.coeff(k);
    std::vector<XPoly> xi;
    xi.reserve(K + 1);
    xi.push_back(state[0]);
    for (int M = 1; M <= K; ++M) {
        int len = static_cast<int>(state.size()) - 1;
        std::vector<XPoly> next(len);
        for (int k = 0; k < len; ++k) {
            long factor = k + 1 - n;
            if (factor == 0) continue;
            XPoly t = state[k + 1] * Rat(factor);
            for (int j = k; j < len; ++j) next[j] += ctx.W_ratio.coeff(j - k) * t;
        }
        state = std::move(next);
        xi.push_back(state.empty() ? XPoly{} : state[0]);
    }
    return xi;
}

InverseXExpansion assemble_expansion(const LogDerivContext& ctx, int n, int H,
                                     int K_override) {
    if (n < 1) throw PreconditionViolated("need n >= 1");
    int K = (K_override >= 0) ? K_override : H * (n - 1);
    if (ctx.order < K + 2)
        throw OrderExhausted("need y-order >= K + 2, have " + std::to_string(ctx.order));
    int width = H + 1;

    // Anchored slots: [y^k] of the stage-M iterate has nominal degree M + k,
    // slot i holds the coefficient of x^{M+k-i}.
    std::vector<Slots> lratio(K + 1, Slots(width)), w0(K + 1, Slots(width));
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < width; ++i) {
            lratio[k][i] = ctx.W_ratio.coeff(k).coeff(k - i);
            w0[k][i] = ctx.w0.coeff(k).coeff(k - i);
        }
    auto xi = slot_engine(lratio, w0, n, K, width);
    InverseXExpansion out;
    out.n = n;
    out.coeffs = assemble_from_slots(xi, H);
    return out;
}

InverseXExpansion oracle_logderiv(const MonicFamily& fam, int n, int H) {
    const XPoly& p = fam.p(n);
    if (p.is_zero()) throw PreconditionViolated("zero polynomial");
    XPoly a = p.deriv().shift_up(1) * Rat(1, n); // x p_n'(x) / n, monic deg n
    YSeries<Rat> at(H), bt(H);                   // reversed, t = 1/x
    for (int i = 0; i <= H; ++i) {
        at.mutable_coeff(i) = a.coeff(n - i);
        bt.mutable_coeff(i) = p.coeff(n - i);
    }
    YSeries<Rat> q = series_div(at, bt);
    InverseXExpansion out;
    out.n = n;
    out.coeffs.assign(q.coeffs().begin(), q.coeffs().end());
    return out;
}

InverseXExpansion binomial_closed_form(const MonicFamily& fam, int n, int H) {
    if (!fam.binomial_f()) throw NotBinomial("family is not of binomial type");
    int K = H * std::max(n - 1, 0);
    int ord = K + 2;
    const YSeries<Rat>& f0 = *fam.binomial_f();
    if (f0.order() < ord)
        throw OrderExhausted("binomial series order too small for K = " + std::to_string(K));
    YSeries<Rat> f = f0.truncate(ord);
    YSeries<Rat> phi = series_revert(f);
    YSeries<Rat> dphi = deriv_y(phi).truncate(ord - 1);
    YSeries<Rat> w = invert_unit(dphi);                               // 1/phi'
    YSeries<Rat> g = series_div(phi.shift_down(1).truncate(ord - 1), dphi); // phi/(y phi')
    std::vector<Rat> xi(K + 1);
    xi[0] = g.coeff(0);
    for (int M = 1; M <= K; ++M) {
        YSeries<Rat> d(g.order() - 1);
        for (int k = 0; k <= d.order(); ++k) {
            long factor = k + 1 - n;
            if (factor != 0) d.mutable_coeff(k) = g.coeff(k + 1) * Rat(factor);
        }
        g = series_mul(w.truncate(d.order()), d);
        xi[M] = g.coeff(0);
    }
    InverseXExpansion out;
    out.n = n;
    out.coeffs.resize(H + 1);
    for (int h = 0; h <= std::min(H, K); ++h)
        out.coeffs[h] = (h % 2 == 0) ? xi[h] : -xi[h];
    if (K == 0) out.coeffs[0] = xi[0];
    return out;
}

DegreeBoundReport degree_bound_check(const LogDerivContext& ctx, int n, int K) {
    auto xi = neumann_xi(ctx, n, K);
    DegreeBoundReport rep;
    for (int M = 0; M <= K; ++M) {
        int deg = xi[M].degree();
        int bound = (n >= 2) ? (M * (n - 2)) / (n - 1) : 0;
        rep.degrees.push_back(deg);
        rep.bounds.push_back(bound);
        if (deg > bound) rep.ok = false;
    }
    return rep;
}

YExpansion dual_fn_logderiv(const MonicFamily& fam, int n, int H) {
    MonicFamily du = fam.dual();
    if (!(du.fn(0) == YSeries<Rat>::constant(du.fn(0).order(), Rat(1))))
        throw PreconditionViolated("dual expansion needs f*_0 = 1");
    int K = H * std::max(n - 1, 0);
    int ordx = K + 2;
    if (du.fn_count() <= ordx + 1)
        throw OrderExhausted("dual series family too short for K = " + std::to_string(K));
    int ordy = du.fn(0).order();
    if (ordy < K + H + 1)
        throw OrderExhausted("y-truncation too small for K = " + std::to_string(K));

    // [x^k] Q = f*_k(y)/k!; derivatives taken coefficient-wise.
    std::vector<YSeries<Rat>> g(ordx + 1, YSeries<Rat>(ordy));
    std::vector<YSeries<Rat>> qx_over_y(ordx + 1, YSeries<Rat>(ordy));
    std::vector<YSeries<Rat>> qy_over_x(ordx + 1, YSeries<Rat>(ordy));
    for (int k = 0; k <= ordx; ++k) {
        Rat ik = factorial(k).inv();
        g[k] = du.fn(k).scaled(ik);
        const YSeries<Rat>& fk1 = du.fn(k + 1);
        qx_over_y[k] = fk1.shift_down(1).truncate(ordy).scaled(ik);
        qy_over_x[k] = deriv_y(fk1).truncate(ordy).scaled(ik * Rat(k + 1).inv());
    }
    std::vector<YSeries<Rat>> W = xdiv(g, qx_over_y);          // y Q / Qx
    std::vector<YSeries<Rat>> w0s = xdiv(qy_over_x, qx_over_y); // (y/x) Qy/Qx
    for (int k = 1; k <= ordx; ++k)
        if (W[k].valuation() <= k)
            throw LemmaViolation("dual ratio coefficient at x^" + std::to_string(k) +
                                 " violates the valuation bound");

    // Anchored slots: [x^k] of the stage-M iterate has valuation >= M + k,
    // slot i holds the coefficient of y^{M+k+i}.
    int width = H + 1;
    std::vector<Slots> lratio(K + 1, Slots(width)), w0(K + 1, Slots(width));
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < width; ++i) {
            lratio[k][i] = W[k].coeff(k + i);
            w0[k][i] = w0s[k].coeff(k + i);
        }
    auto psi = slot_engine(lratio, w0, n, K, width);
    YExpansion out;
    out.n = n;
    out.coeffs = assemble_from_slots(psi, H);
    return out;
}

YExpansion dual_direct(const MonicFamily& fam, int n, int H) {
    MonicFamily du = fam.dual();
    const YSeries<Rat>& f = du.fn(n);
    YSeries<Rat> num = deriv_y(f).shift_up(1).truncate(f.order()); // y f'
    YSeries<Rat> q = series_div(num.shift_down(n), f.shift_down(n)).scaled(Rat(1, n));
    YExpansion out;
    out.n = n;
    out.coeffs.resize(H + 1);
    for (int h = 0; h <= std::min(H, q.order()); ++h) out.coeffs[h] = q.coeff(h);
    return out;
}

} // namespace umbra
