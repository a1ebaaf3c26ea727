#include "mlsc/cma_es.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mlsc {

std::vector<double> project_nonnegative(const std::vector<double>& x) {
    std::vector<double> y(x);
    for (double& v : y) v = std::max(0.0, v);
    return y;
}

CmaEsResult cma_es_optimize(const Objective& objective, int dim, std::uint64_t seed, const CmaEsConfig& cfg) {
    if (dim < 1) throw std::invalid_argument("cma_es: dim must be >= 1");
    if (cfg.population < 2 || cfg.generations < 1 || !(cfg.sigma0 > 0.0))
        throw std::invalid_argument("cma_es: invalid configuration");
    if (!cfg.mean0.empty() && static_cast<int>(cfg.mean0.size()) != dim)
        throw std::invalid_argument("cma_es: mean0 has wrong dimension");

    using Vec = Eigen::VectorXd;
    using Mat = Eigen::MatrixXd;
    const int n = dim;
    const int lambda = cfg.population;
    const int mu = lambda / 2;

    Vec w(mu);
    for (int i = 0; i < mu; ++i) w(i) = std::log(mu + 0.5) - std::log(i + 1.0);
    w /= w.sum();
    const double mueff = 1.0 / w.squaredNorm();

    const double dn = n;
    const double cs = (mueff + 2.0) / (dn + mueff + 5.0);
    const double ds = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dn + 1.0)) - 1.0) + cs;
    const double cc = (4.0 + mueff / dn) / (dn + 4.0 + 2.0 * mueff / dn);
    const double c1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mueff);
    const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dn + 2.0) * (dn + 2.0) + mueff));
    const double chin = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

    Vec m = Vec::Zero(n);
    if (!cfg.mean0.empty()) m = Eigen::Map<const Vec>(cfg.mean0.data(), n);
    double sigma = cfg.sigma0;
    Mat C = Mat::Identity(n, n);
    Vec ps = Vec::Zero(n), pc = Vec::Zero(n);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    CmaEsResult res;
    res.best_value = std::numeric_limits<double>::infinity();

    for (int g = 0; g < cfg.generations; ++g) {
        Eigen::SelfAdjointEigenSolver<Mat> eig(C);
        Vec d = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
        const Mat& B = eig.eigenvectors();

        std::vector<Vec> ys(static_cast<std::size_t>(lambda));
        std::vector<Vec> xs(static_cast<std::size_t>(lambda));
        std::vector<double> f(static_cast<std::size_t>(lambda));
        CmaEsGeneration gen;
        gen.generation = g;
        gen.best_value = std::numeric_limits<double>::infinity();
        for (int k = 0; k < lambda; ++k) {
            Vec z(n);
            for (int i = 0; i < n; ++i) z(i) = normal(rng);
            ys[static_cast<std::size_t>(k)] = B * d.asDiagonal() * z;
            xs[static_cast<std::size_t>(k)] = m + sigma * ys[static_cast<std::size_t>(k)];
            const std::vector<double> raw(xs[static_cast<std::size_t>(k)].data(), xs[static_cast<std::size_t>(k)].data() + n);
            const std::vector<double> proj = cfg.project ? cfg.project(raw) : raw;
            const double v = objective(proj);
            ++res.evaluations;
            f[static_cast<std::size_t>(k)] = v;
            if (v < gen.best_value) {
                gen.best_value = v;
                gen.best_point = proj;
            }
            if (v < res.best_value) {
                res.best_value = v;
                res.best = proj;
            }
        }

        std::vector<int> order(static_cast<std::size_t>(lambda));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)];
        });

        Vec yw = Vec::Zero(n);
        for (int i = 0; i < mu; ++i) yw += w(i) * ys[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        m += sigma * yw;

        const Mat inv_sqrt = B * d.cwiseInverse().asDiagonal() * B.transpose();
        ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * (inv_sqrt * yw);
        const double norm_ratio = ps.norm() / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * (g + 1)));
        const double hs = norm_ratio < (1.4 + 2.0 / (dn + 1.0)) * chin ? 1.0 : 0.0;
        pc = (1.0 - cc) * pc + hs * std::sqrt(cc * (2.0 - cc) * mueff) * yw;

        Mat rank_mu = Mat::Zero(n, n);
        for (int i = 0; i < mu; ++i) {
            const Vec& y = ys[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
            rank_mu += w(i) * y * y.transpose();
        }
        C = (1.0 - c1 - cmu) * C + c1 * (pc * pc.transpose() + (1.0 - hs) * cc * (2.0 - cc) * C) + cmu * rank_mu;
        C = 0.5 * (C + C.transpose());
        sigma *= std::exp((cs / ds) * (ps.norm() / chin - 1.0));

        gen.mean.assign(m.data(), m.data() + n);
        gen.sigma = sigma;
        res.history.push_back(std::move(gen));
    }
    return res;
}

}  // namespace mlsc
