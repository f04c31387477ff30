#include "rota/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "rota/rng.hpp"

namespace rota {

TSpec tspec_with_n(const TSpec& base, std::uint32_t n) {
    switch (base.kind) {
    case TKind::FullSpace:
        return TSpec::full_space(n);
    case TKind::EntrySet:
        return TSpec::entry_set(n, base.entries);
    case TKind::Graphic:
        return TSpec::graphic(n);
    case TKind::Explicit:
        if (base.n != n)
            throw Error("an explicit vector set cannot be resized to n=" + std::to_string(n));
        return base;
    }
    throw Error("unknown tspec kind");
}

std::pair<double, double> wilson95(std::uint32_t successes, std::uint32_t n) {
    if (n == 0)
        return {0.0, 1.0};
    const double z = 1.96, z2 = z * z;
    double p = static_cast<double>(successes) / n;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t derived_trial_seed(std::uint64_t master, std::uint32_t n, std::uint32_t trial) {
    return RngStream(master).split(n).split(trial).next_u64();
}

unsigned worker_count() {
    if (const char* env = std::getenv("ROTA_WORKERS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096)
            throw Error("ROTA_WORKERS must be an integer in [1, 4096]");
        return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

namespace {

void validate(const ExperimentConfig& cfg) {
    if (cfg.ns.empty())
        throw Error("experiment needs at least one n");
    if (cfg.trials < 1)
        throw Error("trials must be >= 1");
    if (cfg.diag_level < 0 || cfg.diag_level > 2)
        throw Error("diagnostics level must be 0, 1 or 2");
    for (std::uint32_t n : cfg.ns) {
        TSpec t = tspec_with_n(cfg.tspec, n); // validates explicit resize
        std::uint32_t r = tspec_rank(t);
        if (r < 1)
            throw Error("n=" + std::to_string(n) + " yields an empty family");
        if (cfg.mode == DecomposeMode::Halves && r < 2)
            throw Error("halves mode needs rank >= 2");
    }
}

// One trial, deterministic in (cfg, n, trial).  Faults are recorded in the
// record, never thrown.  When audit_err is non-null, a claimed success is
// re-verified explicitly and any violation lands in *audit_err.
TrialRecord run_one(const ExperimentConfig& cfg, std::uint32_t n, std::uint32_t trial,
                    std::string* audit_err = nullptr) {
    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = derived_trial_seed(cfg.seed, n, trial);
    TSpec t = tspec_with_n(cfg.tspec, n);
    auto started = std::chrono::steady_clock::now();
    with_ops(cfg.field, [&](auto ops) {
        try {
            auto fam = sample_family(ops, t, tspec_rank(t), rec.seed,
                                     RejectionBudget{cfg.rejection_budget});
            DecomposeOptions opt;
            opt.mode = cfg.mode;
            opt.retries = cfg.retries;
            DecomposeResult res = decompose(ops, fam, opt);
            rec.success_first = res.diag.first_attempt_success;
            rec.success_final = res.success;
            rec.retries_used = res.diag.attempts - 1;
            if (cfg.diag_level >= 1) {
                rec.min_deg_left = res.diag.degrees.min_left;
                rec.min_deg_right = res.diag.degrees.min_right;
                rec.density = res.diag.degrees.density;
            }
            if (!res.success)
                rec.failure_deficiency =
                    static_cast<std::uint32_t>(res.diag.deficient_left.size());
            if (res.success && audit_err) {
                auto vr = verify(ops, fam, res.dec);
                if (!vr.ok)
                    *audit_err = "decomposition failed verify on recomputation";
            }
            if (cfg.diag_level >= 2 && fam.r >= 2) {
                try {
                    auto sv = split(fam, fam.r / 2);
                    rec.bad_pairs = bad_pairs(ops, sv, cfg.bad_L, cfg.bad_K).size();
                } catch (const TooLarge&) {
                    rec.bad_scan_complete = false;
                }
            }
        } catch (const Error&) {
            rec.fault = true; // recorded failure; the sweep continues
        }
    });
    if (cfg.include_timing) {
        auto elapsed = std::chrono::steady_clock::now() - started;
        rec.ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    }
    return rec;
}

std::string format_row(const TrialRecord& r) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%u,%u,%llu,%d,%d,%u,%u,%u,%.6f,%u,%llu\n", r.n, r.trial,
                  static_cast<unsigned long long>(r.seed), r.success_first ? 1 : 0,
                  r.success_final ? 1 : 0, r.retries_used, r.min_deg_left, r.min_deg_right,
                  r.density, r.failure_deficiency, static_cast<unsigned long long>(r.ms));
    return buf;
}

constexpr const char* kCsvTag = "# rota-experiment-csv v1";
constexpr const char* kCsvHeader = "n,trial,seed,success_first,success_final,retries_used,"
                                   "min_deg_left,min_deg_right,density,failure_deficiency,ms";

std::string csv_emit(const std::vector<TrialRecord>& recs) {
    std::string out;
    out += kCsvTag;
    out += '\n';
    out += kCsvHeader;
    out += '\n';
    for (const auto& r : recs)
        out += format_row(r);
    return out;
}

Json summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& recs) {
    Json per_n = Json::array();
    for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni) {
        std::uint32_t first = 0, final_ = 0, faults = 0;
        std::uint64_t bad_total = 0;
        bool scans_complete = true;
        for (std::uint32_t t = 0; t < cfg.trials; ++t) {
            const TrialRecord& r = recs[ni * cfg.trials + t];
            first += r.success_first ? 1 : 0;
            final_ += r.success_final ? 1 : 0;
            faults += r.fault ? 1 : 0;
            bad_total += r.bad_pairs;
            scans_complete = scans_complete && r.bad_scan_complete;
        }
        auto [lo, hi] = wilson95(final_, cfg.trials);
        Json row;
        row["n"] = cfg.ns[ni];
        row["trials"] = cfg.trials;
        row["success_first"] = first;
        row["success_final"] = final_;
        row["rate_first"] = static_cast<double>(first) / cfg.trials;
        row["rate_final"] = static_cast<double>(final_) / cfg.trials;
        row["wilson95_lo"] = lo;
        row["wilson95_hi"] = hi;
        row["faults"] = faults;
        if (cfg.diag_level >= 2) {
            row["bad_pairs_total"] = bad_total;
            row["bad_scans_complete"] = scans_complete;
        }
        per_n.push_back(std::move(row));
    }
    Json j;
    j["schema"] = "rota-experiment-summary v1";
    Json c;
    c["field"] = field_to_json(cfg.field);
    c["tspec"] = tspec_to_json(cfg.tspec);
    c["ns"] = cfg.ns;
    c["trials"] = cfg.trials;
    c["mode"] = cfg.mode == DecomposeMode::Halves ? "halves" : "full";
    c["retries"] = cfg.retries;
    c["seed"] = cfg.seed;
    c["diag_level"] = cfg.diag_level;
    j["config"] = std::move(c);
    j["per_n"] = std::move(per_n);
    return j;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::size_t total = static_cast<std::size_t>(cfg.ns.size()) * cfg.trials;
    std::vector<TrialRecord> recs(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= total)
                return;
            recs[k] = run_one(cfg, cfg.ns[k / cfg.trials],
                              static_cast<std::uint32_t>(k % cfg.trials));
        }
    };
    unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), total));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    ExperimentResult out;
    out.csv = csv_emit(recs);
    out.summary = summarize(cfg, recs);
    out.records = std::move(recs);
    return out;
}

AuditReport audit_csv(const ExperimentConfig& cfg, const std::string& csv_text) {
    validate(cfg);
    AuditReport rep;
    auto complain = [&](std::size_t lineno, const std::string& what) {
        if (rep.mismatches.size() < 20)
            rep.mismatches.push_back("line " + std::to_string(lineno) + ": " + what);
    };

    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < csv_text.size()) {
        std::size_t nl = csv_text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(csv_text.substr(pos));
            break;
        }
        lines.push_back(csv_text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() < 2 || lines[0] != kCsvTag || lines[1] != kCsvHeader) {
        rep.mismatches.push_back("missing or wrong schema tag/header");
        return rep;
    }
    const std::size_t total = static_cast<std::size_t>(cfg.ns.size()) * cfg.trials;
    if (lines.size() - 2 != total) {
        rep.mismatches.push_back("row count " + std::to_string(lines.size() - 2) +
                                 " does not match the config's " + std::to_string(total));
        return rep;
    }
    for (std::size_t k = 0; k < total; ++k) {
        const std::string& line = lines[2 + k];
        std::uint32_t n = cfg.ns[k / cfg.trials];
        std::uint32_t trial = static_cast<std::uint32_t>(k % cfg.trials);
        std::string verify_err;
        TrialRecord rec = run_one(cfg, n, trial, &verify_err);
        if (!verify_err.empty())
            complain(3 + k, verify_err);
        if (cfg.include_timing) {
            // Wall time is not reproducible; carry the artifact's value over.
            auto comma = line.rfind(',');
            if (comma != std::string::npos)
                rec.ms = std::strtoull(line.c_str() + comma + 1, nullptr, 10);
        }
        std::string expect = format_row(rec);
        expect.pop_back(); // trailing newline
        if (line != expect)
            complain(3 + k, "row '" + line + "' != recomputed '" + expect + "'");
        ++rep.rows;
        if (rec.success_final)
            ++rep.successes_verified;
    }
    return rep;
}

} // namespace rota
