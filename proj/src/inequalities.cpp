#include "fracsob/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "fracsob/summation.hpp"

namespace fracsob {

double poincareQuotient(const WeightedGraph& g, const ScalarField& f, VertexId x, int n,
                        double p) {
    g.requireVertex(x);
    if (n < 1) throw ValidationError("poincare radius must be >= 1");
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("poincare requires finite p >= 1");
    if (g.frontierDistance(x) <= 2 * n)
        throw InsufficientRoom("vertex " + std::to_string(x) + " has frontier distance " +
                               std::to_string(g.frontierDistance(x)) + " <= 2n = " +
                               std::to_string(2 * n));

    const Ball inner = ball(g, x, n);
    const Ball outer = ball(g, x, 2 * n);

    const double mean = ballAverage(g, f, x, n);
    std::vector<double> centered(f.values);
    for (double& v : centered) v -= mean;
    const double num = lpNorm(g, centered, p, inner.members);

    const std::vector<double> grad = gradientField(g, f);
    const double den = lpNorm(g, grad, p, outer.members);
    if (den == 0.0)
        throw ZeroGradient("field is constant on B(" + std::to_string(x) + "," +
                           std::to_string(2 * n) + ")");
    return num / den;
}

double pseudoPoincareQuotient(const WeightedGraph& g, const ScalarField& f, int n, double p,
                              int room) {
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("pseudo-poincare requires finite p >= 1");
    const std::vector<double> grad = gradientField(g, f);
    const double den = lpNorm(g, grad, p);
    if (den == 0.0) throw ZeroGradient("field has vanishing gradient");
    if (n == 0) return 0.0;  // f_0 = f

    const ScalarField fn = pseudoAverageField(g, f, n, room);
    // f - f_n vanishes outside the evaluation region, so restrict the norm.
    std::vector<double> diff(f.values);
    for (VertexId v = 0; v < g.vertexCount(); ++v) diff[v] -= fn.values[v];
    const double num = lpNorm(g, diff, p, *fn.support);
    return num / den;
}

double sobolevQuotient(const WeightedGraph& g, const ScalarField& f, double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("sobolev requires finite p >= 1");
    const double num = lpNorm(g, f.values, p);
    if (num == 0.0) throw ZeroField("field is identically zero");
    const std::vector<double> grad = gradientField(g, f);
    const double den = lpNorm(g, grad, p);
    if (den == 0.0) throw ZeroGradient("field has vanishing gradient");
    return num / den;
}

namespace {

// Local view of Omega: CSR adjacency restricted to members, with the ambient
// vertex measures. B = mu (I - P)|Omega is symmetric positive definite for a
// proper subset of a connected graph.
struct LocalDomain {
    std::vector<VertexId> members;
    std::vector<double> mu;
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> nbr;
    std::vector<double> w;

    explicit LocalDomain(const WeightedGraph& g, const Domain& omega) {
        members = omega.members;
        const std::size_t k = members.size();
        std::vector<std::uint32_t> local(g.vertexCount(), UINT32_MAX);
        for (std::size_t i = 0; i < k; ++i) local[members[i]] = static_cast<std::uint32_t>(i);
        mu.resize(k);
        offsets.assign(k + 1, 0);
        for (std::size_t i = 0; i < k; ++i) {
            mu[i] = g.vertexMeasure(members[i]);
            for (const auto& e : g.neighbors(members[i]))
                if (local[e.to] != UINT32_MAX) ++offsets[i + 1];
        }
        for (std::size_t i = 0; i < k; ++i) offsets[i + 1] += offsets[i];
        nbr.resize(offsets[k]);
        w.resize(offsets[k]);
        std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& e : g.neighbors(members[i]))
                if (local[e.to] != UINT32_MAX) {
                    nbr[cursor[i]] = local[e.to];
                    w[cursor[i]] = e.weight;
                    ++cursor[i];
                }
    }

    std::size_t size() const { return members.size(); }

    // y = B x with B = diag(mu) - W
    void applyB(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t k = size();
        for (std::size_t i = 0; i < k; ++i) {
            double s = mu[i] * x[i];
            for (std::size_t j = offsets[i]; j < offsets[i + 1]; ++j) s -= w[j] * x[nbr[j]];
            y[i] = s;
        }
    }

    double dot(const std::vector<double>& a, const std::vector<double>& b) const {
        KahanSum s;
        for (std::size_t i = 0; i < size(); ++i) s.add(a[i] * b[i]);
        return s.value();
    }

    double dotMu(const std::vector<double>& a, const std::vector<double>& b) const {
        KahanSum s;
        for (std::size_t i = 0; i < size(); ++i) s.add(mu[i] * a[i] * b[i]);
        return s.value();
    }

    // Jacobi-preconditioned CG for B x = b, warm-started from x. Returns
    // iterations used, or -1 if the cap was hit.
    int solve(const std::vector<double>& b, std::vector<double>& x, double relTol,
              int maxIter) const {
        const std::size_t k = size();
        std::vector<double> r(k), z(k), d(k), Bd(k);
        applyB(x, r);
        double bnorm = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            r[i] = b[i] - r[i];
            bnorm += b[i] * b[i];
        }
        bnorm = std::sqrt(bnorm);
        if (bnorm == 0.0) {
            std::fill(x.begin(), x.end(), 0.0);
            return 0;
        }
        for (std::size_t i = 0; i < k; ++i) z[i] = r[i] / mu[i];
        d = z;
        double rz = dot(r, z);
        for (int it = 0; it < maxIter; ++it) {
            double rnorm = 0.0;
            for (std::size_t i = 0; i < k; ++i) rnorm += r[i] * r[i];
            if (std::sqrt(rnorm) <= relTol * bnorm) return it;
            applyB(d, Bd);
            const double dBd = dot(d, Bd);
            if (dBd <= 0.0) return it;  // numerically singular direction
            const double alpha = rz / dBd;
            for (std::size_t i = 0; i < k; ++i) {
                x[i] += alpha * d[i];
                r[i] -= alpha * Bd[i];
            }
            for (std::size_t i = 0; i < k; ++i) z[i] = r[i] / mu[i];
            const double rzNew = dot(r, z);
            const double beta = rzNew / rz;
            rz = rzNew;
            for (std::size_t i = 0; i < k; ++i) d[i] = z[i] + beta * d[i];
        }
        return -1;
    }
};

}  // namespace

FaberKrahnResult faberKrahnLambda1(const WeightedGraph& g, const Domain& omega, double tol) {
    if (omega.members.empty()) throw EmptyDomain("domain is empty");
    if (omega.members.size() == g.vertexCount())
        throw ValidationError("domain must be a proper subset (I-P has no Dirichlet boundary)");
    if (g.hasFrontier())
        for (VertexId v : omega.members)
            if (g.frontierDistance(v) == 0)
                throw InsufficientRoom("domain vertex " + std::to_string(v) +
                                       " lies on the truncation frontier");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

    const LocalDomain loc(g, omega);
    const std::size_t k = loc.size();
    std::vector<double> v(k, 1.0), w(k, 0.0), b(k), Bv(k);

    // normalize in mu-norm
    auto normalizeMu = [&](std::vector<double>& x) {
        const double nn = std::sqrt(loc.dotMu(x, x));
        for (double& xi : x) xi /= nn;
        return nn;
    };
    normalizeMu(v);

    constexpr int kMaxOuter = 100000;
    double lambda = 0.0, lambdaPrev = -1.0;
    int outer = 0;
    double innerTol = 1e-4;
    for (; outer < kMaxOuter; ++outer) {
        for (std::size_t i = 0; i < k; ++i) b[i] = loc.mu[i] * v[i];
        // warm start: the previous eigenvector scaled by 1/lambda is already
        // close to the solve target
        if (outer == 0)
            w = v;
        else
            for (std::size_t i = 0; i < k; ++i) w[i] = v[i] / lambda;
        if (loc.solve(b, w, innerTol, 400000) < 0)
            throw NoConvergence("inner CG solve did not converge");
        normalizeMu(w);
        loc.applyB(w, Bv);
        lambda = loc.dot(Bv, w);  // Rayleigh quotient (mu-normalized w)
        v = w;
        if (outer > 0) {
            const double change = std::abs(lambda - lambdaPrev);
            if (change <= tol * std::abs(lambda)) break;
            // tighten the inner solve as the eigenvalue settles; the Rayleigh
            // quotient is second-order accurate, so 1e-9 residuals suffice
            innerTol = std::max(1e-9, std::min(innerTol, 0.05 * change / std::abs(lambda)));
        }
        lambdaPrev = lambda;
    }
    if (outer == kMaxOuter) throw NoConvergence("inverse power iteration hit 1e5 iterations");

    std::vector<double> full(g.vertexCount(), 0.0);
    for (std::size_t i = 0; i < k; ++i) full[loc.members[i]] = v[i];
    return {lambda, outer + 1, makeField(g, std::move(full), omega.members)};
}

namespace {

// Rayleigh-type functionals for the ascent: N(f) = sum |f|^p mu,
// Dn(f) = sum |grad f|^p mu, both over the whole graph, for f in C0(Omega).
struct AscentWork {
    const WeightedGraph& g;
    const Domain& omega;
    double p;

    double numerator(const std::vector<double>& f) const {
        KahanSum s;
        for (VertexId x : omega.members)
            s.add(std::pow(std::abs(f[x]), p) * g.vertexMeasure(x));
        return s.value();
    }

    // q(x) = 1/2 sum_y p(x,y) (f(x)-f(y))^2; Dn = sum mu q^(p/2)
    double denominator(const std::vector<double>& f, std::vector<double>* qOut = nullptr) const {
        KahanSum s;
        if (qOut) qOut->assign(g.vertexCount(), 0.0);
        for (VertexId x = 0; x < g.vertexCount(); ++x) {
            double q = 0.0;
            for (const auto& e : g.neighbors(x)) {
                const double d = f[x] - f[e.to];
                q += e.weight * d * d;
            }
            q = 0.5 * q / g.vertexMeasure(x);
            if (qOut) (*qOut)[x] = q;
            s.add(std::pow(q, 0.5 * p) * g.vertexMeasure(x));
        }
        return s.value();
    }

    // gradient of log(N/Dn) restricted to Omega
    std::vector<double> logGradient(const std::vector<double>& f, double N, double Dn,
                                    const std::vector<double>& q) const {
        std::vector<double> out(g.vertexCount(), 0.0);
        const double eps = 1e-300;  // guards q^(p/2-1) when q = 0 and p < 2
        for (VertexId z : omega.members) {
            const double fz = f[z];
            double dN = p * std::pow(std::abs(fz), p - 1.0) * (fz >= 0.0 ? 1.0 : -1.0) *
                        g.vertexMeasure(z);
            double dD = 0.0;
            const double qz = std::max(q[z], eps);
            for (const auto& e : g.neighbors(z)) {
                const double qy = std::max(q[e.to], eps);
                dD += e.weight * (std::pow(qz, 0.5 * p - 1.0) + std::pow(qy, 0.5 * p - 1.0)) *
                      (fz - f[e.to]);
            }
            dD *= 0.5 * p;
            out[z] = dN / N - dD / Dn;
        }
        return out;
    }
};

// Exact line search for p = 2: both N and Dn are quadratics in the step, so
// the stationary steps solve a scalar quadratic.
double bestQuadraticStep(double a0, double a1, double a2, double b0, double b1, double b2) {
    const double A = a2 * b1 - a1 * b2;
    const double B = 2.0 * (a2 * b0 - a0 * b2);
    const double C = a1 * b0 - a0 * b1;
    auto ratio = [&](double t) {
        const double den = b0 + t * (b1 + t * b2);
        return den > 0.0 ? (a0 + t * (a1 + t * a2)) / den : -1.0;
    };
    double best = 0.0, bestVal = ratio(0.0);
    auto consider = [&](double t) {
        const double v = ratio(t);
        if (std::isfinite(v) && v > bestVal) {
            bestVal = v;
            best = t;
        }
    };
    if (std::abs(A) > 0.0) {
        const double disc = B * B - 4.0 * A * C;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            consider((-B + s) / (2.0 * A));
            consider((-B - s) / (2.0 * A));
        }
    } else if (std::abs(B) > 0.0) {
        consider(-C / B);
    }
    return best;
}

}  // namespace

QuotientReport maximizeSobolevQuotient(const WeightedGraph& g, const Domain& omega, double p,
                                       const std::vector<ScalarField>& seeds, int iters,
                                       double tol) {
    if (omega.members.empty()) throw EmptyDomain("domain is empty");
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("requires finite p >= 1");
    if (seeds.empty()) throw ValidationError("at least one seed field is required");

    const AscentWork work{g, omega, p};
    QuotientReport report;
    report.p = p;
    report.scale = omega.measure;
    report.kind = "sobolev";

    auto evaluate = [&](const std::vector<double>& f) -> double {
        const double N = work.numerator(f);
        if (N == 0.0) return -1.0;
        const double Dn = work.denominator(f);
        return Dn > 0.0 ? std::pow(N / Dn, 1.0 / p) : -1.0;
    };

    auto record = [&](const std::vector<double>& f, double value) {
        if (value > report.value) {
            report.value = value;
            std::vector<double> vals(g.vertexCount(), 0.0);
            for (VertexId x : omega.members) vals[x] = f[x];
            report.witness = makeField(g, std::move(vals), omega.members);
        }
    };

    bool allConverged = true;
    for (const auto& seed : seeds) {
        if (seed.values.size() != g.vertexCount())
            throw ValidationError("seed field/graph size mismatch");
        // project onto C0(Omega)
        std::vector<double> f(g.vertexCount(), 0.0);
        bool any = false;
        for (VertexId x : omega.members) {
            f[x] = seed.values[x];
            any |= f[x] != 0.0;
        }
        if (!any) continue;
        double value = evaluate(f);
        record(f, value);
        if (p == 1.0) continue;  // non-smooth objective: seeds are evaluated only

        double step = 0.25;
        int sinceImprovement = 0;
        double windowBest = value;
        bool converged = false;
        std::vector<double> q;
        for (int it = 0; it < iters; ++it) {
            const double N = work.numerator(f);
            const double Dn = work.denominator(f, &q);
            std::vector<double> grad = work.logGradient(f, N, Dn, q);

            // scale the direction to the field's size
            double fn = 0.0, gn = 0.0;
            for (VertexId x : omega.members) {
                fn += f[x] * f[x];
                gn += grad[x] * grad[x];
            }
            if (gn == 0.0) {
                converged = true;
                break;
            }
            const double scale = std::sqrt(fn / gn);

            double tried = value;
            if (p == 2.0) {
                // exact step on the ratio of quadratics
                double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
                for (VertexId x : omega.members) {
                    a1 += 2.0 * f[x] * grad[x] * g.vertexMeasure(x);
                    a2 += grad[x] * grad[x] * g.vertexMeasure(x);
                }
                KahanSum sb1, sb2;
                for (VertexId x = 0; x < g.vertexCount(); ++x)
                    for (const auto& e : g.neighbors(x)) {
                        const double df = f[x] - f[e.to];
                        const double dg = grad[x] - grad[e.to];
                        sb1.add(e.weight * df * dg);  // ordered pairs: equals 2 x bilinear form
                        sb2.add(0.5 * e.weight * dg * dg);
                    }
                b1 = sb1.value();
                b2 = sb2.value();
                const double t = bestQuadraticStep(N, a1, a2, Dn, b1, b2);
                if (t != 0.0) {
                    for (VertexId x : omega.members) f[x] += t * grad[x];
                    tried = evaluate(f);
                }
            } else {
                // backtracking: halve the step until the quotient increases
                std::vector<double> trial(f);
                bool improved = false;
                double t = step;
                for (int h = 0; h < 60; ++h) {
                    for (VertexId x : omega.members) trial[x] = f[x] + t * scale * grad[x];
                    const double tv = evaluate(trial);
                    if (tv > value) {
                        f.swap(trial);
                        tried = tv;
                        step = std::min(1.0, t * 1.5);
                        improved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if (!improved) {
                    converged = true;
                    break;
                }
            }

            record(f, tried);  // pair the witness with its own value
            if (tried > value) value = tried;

            // stop when the quotient improves < tol relative over 50 iterations
            if (++sinceImprovement >= 50) {
                if (value - windowBest < tol * std::abs(value)) {
                    converged = true;
                    break;
                }
                windowBest = value;
                sinceImprovement = 0;
            }

            // renormalize for conditioning (the quotient is 0-homogeneous)
            double nrm = 0.0;
            for (VertexId x : omega.members) nrm = std::max(nrm, std::abs(f[x]));
            if (nrm > 0.0)
                for (VertexId x : omega.members) f[x] /= nrm;
        }
        allConverged &= converged;
    }

    if (report.value <= 0.0) throw ZeroField("every seed projects to zero on the domain");
    report.converged = allConverged;
    return report;
}

double pathKernelK(const WeightedGraph& g, VertexId x, int n, double p, std::size_t ballCap) {
    g.requireVertex(x);
    if (n < 0) throw ValidationError("radius must be >= 0");
    if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("requires finite p >= 1");
    if (g.frontierDistance(x) <= 2 * n)
        throw InsufficientRoom("vertex " + std::to_string(x) + " has frontier distance " +
                               std::to_string(g.frontierDistance(x)) + " <= 2n = " +
                               std::to_string(2 * n));
    const Ball b = ball(g, x, n);
    if (b.members.size() > ballCap)
        throw BallTooLarge("ball has " + std::to_string(b.members.size()) +
                           " members, cap is " + std::to_string(ballCap));

    std::vector<std::uint8_t> inBall(g.vertexCount(), 0);
    for (VertexId v : b.members) inBall[v] = 1;

    // Distances between ball members are computed in the whole graph
    // (shortest paths may leave the ball), truncated at depth 2n.
    KahanSum total;
    std::vector<int> dist(g.vertexCount());
    std::deque<VertexId> q;
    for (VertexId y : b.members) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[y] = 0;
        q.clear();
        q.push_back(y);
        KahanSum inner;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            if (inBall[v]) inner.add(std::pow(static_cast<double>(dist[v]), p - 1.0) *
                                     g.vertexMeasure(v));
            if (dist[v] >= 2 * n) continue;
            for (const auto& e : g.neighbors(v))
                if (dist[e.to] < 0) {
                    dist[e.to] = dist[v] + 1;
                    q.push_back(e.to);
                }
        }
        total.add(g.vertexMeasure(y) * inner.value());
    }
    return total.value();
}

}  // namespace fracsob
