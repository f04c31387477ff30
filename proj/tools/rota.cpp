// Command-line surface: sampling, decomposition, verification, the
// exhaustive oracle, certified constants, dispersedness checks, and the
// Monte-Carlo experiment sweep.
//
// Exit codes: 0 success, 1 a check or decomposition failed, 2 usage error,
// 3 a work budget was exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rota/experiment.hpp"
#include "rota/oracle.hpp"
#include "rota/serial.hpp"

namespace {

using namespace rota;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw Error("cannot write '" + out_path + "'");
    f << text;
}

FieldSpec parse_field(const std::string& s) {
    if (s == "zz")
        return FieldSpec::exact_integer();
    if (s.rfind("gf:", 0) == 0) {
        char* end = nullptr;
        unsigned long long p = std::strtoull(s.c_str() + 3, &end, 10);
        if (end == s.c_str() + 3 || *end != '\0')
            throw Error("bad field '" + s + "'; expected gf:<p> or zz");
        return field_make(FieldSpec::prime(p));
    }
    throw Error("bad field '" + s + "'; expected gf:<p> or zz");
}

std::vector<std::int64_t> parse_int_csv(const std::string& s) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty())
            throw Error("empty entry in list '" + s + "'");
        char* end = nullptr;
        long long v = std::strtoll(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size())
            throw Error("bad integer '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// Template form: full/entry-set leave n = 0 until a dimension is supplied;
// graphic:<v> and file:<path> carry their own.
TSpec parse_tspec_template(const std::string& s) {
    if (s == "full")
        return TSpec::full_space(0);
    if (s.rfind("entries:", 0) == 0)
        return TSpec::entry_set(0, parse_int_csv(s.substr(8)));
    if (s.rfind("graphic:", 0) == 0) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s.c_str() + 8, &end, 10);
        if (end == s.c_str() + 8 || *end != '\0')
            throw Error("bad vertex count in '" + s + "'");
        return TSpec::graphic(static_cast<std::uint32_t>(v));
    }
    if (s.rfind("file:", 0) == 0)
        return tspec_from_json(parse_json(read_file(s.substr(5))));
    throw Error("bad t '" + s + "'; expected full|entries:<csv>|file:<path>|graphic:<v>");
}

TSpec resolve_tspec(const std::string& s, std::uint32_t n_flag) {
    TSpec t = parse_tspec_template(s);
    if (t.kind == TKind::FullSpace || t.kind == TKind::EntrySet) {
        if (n_flag == 0)
            throw Error("this t needs --n");
        return tspec_with_n(t, n_flag);
    }
    if (n_flag != 0 && n_flag != t.n)
        throw Error("--n disagrees with the dimension carried by --t");
    return t;
}

DecomposeMode parse_mode(const std::string& s) {
    if (s == "full")
        return DecomposeMode::Full;
    if (s == "halves")
        return DecomposeMode::Halves;
    throw Error("bad mode '" + s + "'; expected full or halves");
}

struct Args {
    std::uint64_t seed = 0;
    std::string field = "gf:2";
    bool field_given = false;
    std::string t = "full";
    std::string out;
    std::string mode = "full";
    std::uint32_t retries = 3;
    std::uint32_t trials = 100;
};

FieldSpec field_for(const Args& a, const TSpec& t) {
    // Graphic sets live over the integers; default the field accordingly
    // unless the user explicitly picked one.
    if (t.kind == TKind::Graphic && !a.field_given)
        return FieldSpec::exact_integer();
    return parse_field(a.field);
}

int cmd_sample(const Args& a, std::uint32_t n, std::uint64_t budget) {
    TSpec t = resolve_tspec(a.t, n);
    FieldSpec fs = field_for(a, t);
    return with_ops(fs, [&](auto ops) {
        auto fam = sample_family(ops, t, tspec_rank(t), a.seed, RejectionBudget{budget});
        emit(a.out, json_dump(family_to_json(ops, fam)));
        return kExitOk;
    });
}

int cmd_decompose(const Args& a, const std::string& in, std::optional<std::uint32_t> n_prime) {
    FamilyVariant fv = family_from_json(parse_json(read_file(in)));
    return std::visit(
        [&](auto& fam) {
            using Ops = family_ops_t<std::decay_t<decltype(fam)>>;
            Ops ops = ops_for<Ops>(fam.field);
            DecomposeOptions opt;
            opt.mode = parse_mode(a.mode);
            opt.n_prime = n_prime;
            opt.retries = a.retries;
            DecomposeResult res = decompose(ops, fam, opt);
            Json j;
            j["diagnostics"] = diagnostics_to_json(res.diag);
            if (res.success)
                j["classes"] = decomposition_to_json(res.dec)["classes"];
            emit(a.out, json_dump(j));
            if (!res.success) {
                std::cerr << "decomposition failed at stage "
                          << failure_stage_name(res.diag.failure_stage) << "\n";
                return kExitFailure;
            }
            return kExitOk;
        },
        fv);
}

int cmd_verify(const Args& a, const std::string& fam_path, const std::string& dec_path) {
    FamilyVariant fv = family_from_json(parse_json(read_file(fam_path)));
    Decomposition dec = decomposition_from_json(parse_json(read_file(dec_path)));
    return std::visit(
        [&](auto& fam) {
            using Ops = family_ops_t<std::decay_t<decltype(fam)>>;
            Ops ops = ops_for<Ops>(fam.field);
            VerifyReport rep = verify(ops, fam, dec);
            Json j;
            j["ok"] = rep.ok;
            Json vs = Json::array();
            for (const auto& v : rep.violations)
                vs.push_back(v.detail);
            j["violations"] = std::move(vs);
            emit(a.out, json_dump(j));
            if (!rep.ok) {
                for (const auto& v : rep.violations)
                    std::cerr << "violation: " << v.detail << "\n";
                return kExitFailure;
            }
            return kExitOk;
        },
        fv);
}

int cmd_oracle(const Args& a, const std::string& in, std::uint32_t n, std::uint64_t nodes,
               double secs) {
    auto run = [&](auto ops, const auto& fam) {
        if (fam.r > 12)
            throw TooLarge("the exhaustive oracle is for rank <= 12");
        OracleResult res = oracle_decompose(ops, fam, SearchBudget{nodes, secs});
        Json j;
        j["nodes"] = res.nodes;
        switch (res.status) {
        case OracleStatus::Found:
            j["status"] = "found";
            j["classes"] = decomposition_to_json(*res.dec)["classes"];
            break;
        case OracleStatus::NoneExists:
            j["status"] = "none";
            break;
        case OracleStatus::Indeterminate:
            j["status"] = "indeterminate";
            break;
        }
        emit(a.out, json_dump(j));
        if (res.status == OracleStatus::Found)
            return kExitOk;
        return res.status == OracleStatus::NoneExists ? kExitFailure : kExitBudget;
    };
    if (!in.empty()) {
        FamilyVariant fv = family_from_json(parse_json(read_file(in)));
        return std::visit(
            [&](auto& fam) {
                using Ops = family_ops_t<std::decay_t<decltype(fam)>>;
                return run(ops_for<Ops>(fam.field), fam);
            },
            fv);
    }
    TSpec t = resolve_tspec(a.t, n);
    FieldSpec fs = field_for(a, t);
    return with_ops(fs, [&](auto ops) {
        auto fam = sample_family(ops, t, tspec_rank(t), a.seed, RejectionBudget{});
        return run(ops, fam);
    });
}

int cmd_constants(const Args& a, const std::string& c_str, const std::string& eps_str,
                  std::uint32_t alpha_count) {
    Rat c = parse_rational(c_str);
    Rat eps = parse_rational(eps_str);
    ConstantsReport rep = constants_report(c, eps, alpha_count);
    emit(a.out, json_dump(constants_report_to_json(rep)));
    return kExitOk;
}

int cmd_dispersed(const Args& a, std::uint32_t n, const std::string& c_str,
                  std::uint64_t budget) {
    TSpec t = resolve_tspec(a.t, n);
    FieldSpec fs = field_for(a, t);
    Rational c(parse_rational(c_str));
    return with_ops(fs, [&](auto ops) {
        auto tset = t_enumerate(ops, t);
        auto witness = is_dispersed(ops, tset, c, budget);
        Json j;
        j["c"] = c.str();
        j["t_size"] = tset.vecs.size();
        j["dispersed"] = !witness.has_value();
        if (witness)
            j["witness"] = witness_to_json(ops, *witness);
        emit(a.out, json_dump(j));
        return witness ? kExitFailure : kExitOk;
    });
}

int cmd_experiment(const Args& a, const std::string& ns_csv, int diag, bool timing,
                   const std::string& summary_path, bool audit) {
    ExperimentConfig cfg;
    cfg.tspec = parse_tspec_template(a.t);
    cfg.field = field_for(a, cfg.tspec);
    for (std::int64_t v : parse_int_csv(ns_csv)) {
        if (v < 1 || v > 1'000'000)
            throw Error("bad n '" + std::to_string(v) + "' in --ns");
        cfg.ns.push_back(static_cast<std::uint32_t>(v));
    }
    cfg.trials = a.trials;
    cfg.mode = parse_mode(a.mode);
    cfg.retries = a.retries;
    cfg.seed = a.seed;
    cfg.diag_level = diag;
    cfg.include_timing = timing;
    ExperimentResult res = run_experiment(cfg);
    emit(a.out, res.csv);
    if (!summary_path.empty())
        emit(summary_path, json_dump(res.summary));
    if (audit) {
        AuditReport rep = audit_csv(cfg, res.csv);
        if (!rep.ok()) {
            for (const auto& m : rep.mismatches)
                std::cerr << "audit: " << m << "\n";
            return kExitFailure;
        }
        std::cerr << "audit: " << rep.rows << " rows, " << rep.successes_verified
                  << " verified successes\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transversal basis decomposition toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Args a;
    app.add_option("--seed", a.seed, "master seed");
    auto* field_opt = app.add_option("--field", a.field, "gf:<p> or zz");
    app.add_option("--t", a.t, "full | entries:<csv> | file:<path> | graphic:<v>");
    app.add_option("--out", a.out, "output path (default stdout)");
    app.add_option("--mode", a.mode, "full or halves");
    app.add_option("--retries", a.retries, "matching retries after the first attempt");
    app.add_option("--trials", a.trials, "trials per n (experiment)");

    std::uint32_t n = 0;
    std::uint64_t rejection_budget = 10'000;
    auto* c_sample = app.add_subcommand("sample", "draw a basis family, emit JSON");
    c_sample->add_option("--n", n, "dimension (vertex count for graphic)");
    c_sample->add_option("--rejection-budget", rejection_budget, "tuple rejection budget");

    std::string in_path;
    std::optional<std::uint32_t> n_prime;
    auto* c_dec = app.add_subcommand("decompose", "decompose a family JSON");
    c_dec->add_option("family", in_path, "family JSON path")->required();
    std::uint32_t n_prime_raw = 0;
    auto* npopt = c_dec->add_option("--n-prime", n_prime_raw, "split point override");

    std::string dec_path;
    auto* c_ver = app.add_subcommand("verify", "check a decomposition against its family");
    c_ver->add_option("family", in_path, "family JSON path")->required();
    c_ver->add_option("decomposition", dec_path, "decomposition JSON path")->required();

    std::uint64_t oracle_nodes = 10'000'000;
    double oracle_secs = 120.0;
    std::string oracle_in;
    auto* c_orc = app.add_subcommand("oracle", "exhaustive decomposition search (tiny rank)");
    c_orc->add_option("--in", oracle_in, "family JSON path (otherwise samples per --t)");
    c_orc->add_option("--n", n, "dimension when sampling");
    c_orc->add_option("--node-budget", oracle_nodes, "search node budget");
    c_orc->add_option("--time-budget", oracle_secs, "search time budget, seconds");

    std::string c_str = "1/2", eps_str = "1/1000000000";
    std::uint32_t alpha_count = 8;
    auto* c_con = app.add_subcommand("constants", "certified proof constants as JSON");
    c_con->add_option("--c", c_str, "dispersedness constant, rational or decimal");
    c_con->add_option("--eps", eps_str, "interval width target");
    c_con->add_option("--alpha-count", alpha_count, "how many alpha_k to report");

    std::uint64_t disp_budget = std::uint64_t(1) << 20;
    auto* c_dis = app.add_subcommand("dispersed", "check the dispersedness inequality");
    c_dis->add_option("--n", n, "dimension");
    c_dis->add_option("--c", c_str, "dispersedness constant");
    c_dis->add_option("--budget", disp_budget, "subset evaluation budget");

    std::string ns_csv = "8,16,32";
    int diag = 1;
    bool timing = false, audit = false;
    std::string summary_path;
    auto* c_exp = app.add_subcommand("experiment", "Monte-Carlo sweep, CSV + JSON summary");
    c_exp->add_option("--ns", ns_csv, "comma-separated dimensions");
    c_exp->add_option("--diag", diag, "0 success only, 1 + degrees, 2 + bad-pair scan");
    c_exp->add_flag("--timing", timing, "fill the ms column (breaks reproducibility)");
    c_exp->add_option("--summary", summary_path, "summary JSON path");
    c_exp->add_flag("--audit", audit, "re-run and verify every emitted row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    a.field_given = field_opt->count() > 0;
    if (npopt->count() > 0)
        n_prime = n_prime_raw;

    try {
        if (c_sample->parsed())
            return cmd_sample(a, n, rejection_budget);
        if (c_dec->parsed())
            return cmd_decompose(a, in_path, n_prime);
        if (c_ver->parsed())
            return cmd_verify(a, in_path, dec_path);
        if (c_orc->parsed())
            return cmd_oracle(a, oracle_in, n, oracle_nodes, oracle_secs);
        if (c_con->parsed())
            return cmd_constants(a, c_str, eps_str, alpha_count);
        if (c_dis->parsed())
            return cmd_dispersed(a, n, c_str, disp_budget);
        if (c_exp->parsed())
            return cmd_experiment(a, ns_csv, diag, timing, summary_path, audit);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const RejectionBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const TooLarge& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
