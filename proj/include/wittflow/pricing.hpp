#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wittflow/heston.hpp"
#include "wittflow/sabr.hpp"
#include "wittflow/schemes.hpp"
#include "wittflow/version.hpp"

namespace wittflow::harness {

using sampling::SamplingKind;
using sampling::SchemeKind;
using schemes::Backend;
using schemes::SchemeConfig;

enum class ModelKind { sabr, heston };

struct RunConfig {
    ModelKind model = ModelKind::sabr;
    models::SabrParams sabr{};
    models::HestonParams heston{};
    Vec2 x0{1.0, 0.3};
    double maturity = 1.0;
    double strike = 1.05;
    SchemeConfig scheme{};
    SamplingKind sampling = SamplingKind::sobol;
    std::uint64_t seed = 0;
    std::uint64_t skip = 0;
    std::uint64_t samples = 100000;
    int nSteps = 16;
    std::optional<double> reference;  // true value, for error columns
    int threads = 0;                  // 0: hardware count; WITTFLOW_THREADS caps either way
    const sampling::SobolTable* sobol = nullptr;
};

struct PricingReport {
    double estimate = 0.0;
    std::optional<double> standardError;  // pseudo-random runs only
    std::optional<double> absError;
    std::uint64_t samples = 0;
    int nSteps = 0;
    double seconds = 0.0;
    std::string model, scheme, backend, sampling;
    std::uint64_t seed = 0, skip = 0;
    std::string version = kVersion;
};

inline const char* to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::em: return "em";
        case SchemeKind::nv: return "nv";
        case SchemeKind::nn: return "nn";
    }
    return "?";
}
inline const char* to_string(Backend b) { return b == Backend::analytic ? "analytic" : "rk"; }
inline const char* to_string(SamplingKind s) { return s == SamplingKind::sobol ? "sobol" : "prng"; }
inline const char* to_string(ModelKind m) { return m == ModelKind::sabr ? "sabr" : "heston"; }

namespace detail {

// fixed-shape pairwise (tree) sum; the association never depends on how the
// work was scheduled, only on the block contents
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

// Samples are summed in fixed blocks of this size. Workers claim whole
// blocks, so thread count and scheduling cannot move a sample across a block
// boundary and the reduction is bit-reproducible.
inline constexpr std::uint64_t kSumBlock = 4096;

inline int env_thread_cap() {
    const char* raw = std::getenv("WITTFLOW_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    const long v = std::strtol(raw, nullptr, 10);
    return v > 0 ? static_cast<int>(v) : 1;
}

inline int resolve_threads(int requested) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    const int cap = env_thread_cap();
    if (cap > 0 && t > cap) t = cap;
    return t;
}

template <class Model>
void run_blocks(const Model& model, const RunConfig& cfg, const sampling::SampleSource& src,
                const sampling::DrawPlan& plan, std::vector<double>& blockSum,
                std::vector<double>& blockSq) {
    const std::uint64_t nBlocks = blockSum.size();
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::string firstError;
    std::mutex errorLock;

    auto worker = [&]() {
        std::vector<double> payoff(kSumBlock), payoffSq(kSumBlock);
        std::uint64_t b;
        while ((b = next.fetch_add(1)) < nBlocks && !failed.load(std::memory_order_relaxed)) {
            const std::uint64_t first = b * kSumBlock + 1;  // samples are 1-based
            const std::uint64_t count = std::min(kSumBlock, cfg.samples - b * kSumBlock);
            try {
                for (std::uint64_t i = 0; i < count; ++i) {
                    const Vec2 xT = schemes::simulate_path(model, cfg.x0, cfg.maturity, cfg.scheme,
                                                           src, plan, first + i);
                    const double value = xT.x1 > cfg.strike ? xT.x1 - cfg.strike : 0.0;
                    if (!std::isfinite(value))
                        throw std::runtime_error("price: non-finite payoff at sample " +
                                                 std::to_string(first + i));
                    payoff[i] = value;
                    payoffSq[i] = value * value;
                }
                blockSum[b] = pairwise_sum(payoff.data(), count);
                blockSq[b] = pairwise_sum(payoffSq.data(), count);
            } catch (const std::exception& e) {
                const std::scoped_lock lock(errorLock);
                if (!failed.exchange(true)) firstError = e.what();
            }
        }
    };

    const int threads = resolve_threads(cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(firstError);
}

}  // namespace detail

inline sampling::SampleSource make_source(const RunConfig& cfg) {
    sampling::SampleSource src;
    src.kind = cfg.sampling;
    src.seed = cfg.seed;
    src.skip = cfg.skip;
    src.table = cfg.sobol;
    if (cfg.sampling == SamplingKind::sobol && cfg.sobol == nullptr)
        throw std::invalid_argument("price: Sobol sampling requested without a direction table");
    return src;
}

// Monte Carlo price of the call payoff max(x1(T) - strike, 0)
inline PricingReport price(const RunConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("price: need at least one sample");
    if (cfg.nSteps < 1) throw std::invalid_argument("price: need at least one step");

    const auto plan = sampling::make_draw_plan(cfg.scheme.scheme, cfg.nSteps);
    const auto src = make_source(cfg);
    const std::uint64_t nBlocks = (cfg.samples + detail::kSumBlock - 1) / detail::kSumBlock;
    std::vector<double> blockSum(nBlocks, 0.0), blockSq(nBlocks, 0.0);

    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.model == ModelKind::sabr) {
        const models::Sabr model(cfg.sabr);
        detail::run_blocks(model, cfg, src, plan, blockSum, blockSq);
    } else {
        const models::Heston model(cfg.heston);
        detail::run_blocks(model, cfg, src, plan, blockSum, blockSq);
    }
    const auto t1 = std::chrono::steady_clock::now();

    const double total = detail::pairwise_sum(blockSum.data(), blockSum.size());
    const double totalSq = detail::pairwise_sum(blockSq.data(), blockSq.size());
    const double n = static_cast<double>(cfg.samples);
    const double mean = total / n;

    PricingReport rep;
    rep.estimate = mean;
    if (cfg.sampling == SamplingKind::prng && cfg.samples > 1) {
        const double var = (totalSq - n * mean * mean) / (n - 1.0);
        rep.standardError = std::sqrt(var > 0.0 ? var / n : 0.0);
    }
    if (cfg.reference) rep.absError = std::abs(mean - *cfg.reference);
    rep.samples = cfg.samples;
    rep.nSteps = cfg.nSteps;
    rep.seconds = std::chrono::duration<double>(t1 - t0).count();
    rep.model = to_string(cfg.model);
    rep.scheme = to_string(cfg.scheme.scheme);
    rep.backend = cfg.scheme.scheme == SchemeKind::em ? "analytic" : to_string(cfg.scheme.backend);
    rep.sampling = to_string(cfg.sampling);
    rep.seed = cfg.seed;
    rep.skip = cfg.skip;
    return rep;
}

// One price() per step count; pair with fit_loglog_slope for the order plot
inline std::vector<PricingReport> converge(RunConfig cfg, const std::vector<int>& stepList) {
    std::vector<PricingReport> out;
    out.reserve(stepList.size());
    for (int n : stepList) {
        cfg.nSteps = n;
        out.push_back(price(cfg));
    }
    return out;
}

// least-squares slope of log(absError) against log(nSteps)
inline std::optional<double> fit_loglog_slope(const std::vector<PricingReport>& rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows)
        if (r.absError && *r.absError > 0.0)
            pts.push_back({std::log(static_cast<double>(r.nSteps)), std::log(*r.absError)});
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// CSV with one row per run; floats carry 17 significant digits so rereading
// them reproduces the doubles exactly
inline void write_csv_header(std::ostream& os) {
    os << "scheme,backend,sampling,n_steps,samples,estimate,abs_error,seconds\n";
}

inline void write_csv_row(std::ostream& os, const PricingReport& r) {
    char buf[128];
    os << r.scheme << ',' << r.backend << ',' << r.sampling << ',' << r.nSteps << ',' << r.samples;
    std::snprintf(buf, sizeof buf, ",%.17g", r.estimate);
    os << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", r.absError ? *r.absError : std::nan(""));
    os << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", r.seconds);
    os << buf << '\n';
}

}  // namespace wittflow::harness
