// lpmf: exact verification, construction and nilpotent factorization of
// pseudoidentity matrix pairs and biorthogonal wavelet matrix pairs over
// Laurent-polynomial rings. All arithmetic is over Q or Q(i); no floating
// point anywhere.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpmf/documents.hpp"
#include "lpmf/pseudoidentity.hpp"

using namespace lpmf;

namespace {

// exit-code contract: 0 success, 2 definitional/mathematical violation,
// 1 usage/parse/IO error
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

const char* pf(bool ok) { return ok ? "pass" : "fail"; }
const char* tf(bool ok) { return ok ? "true" : "false"; }

Field parse_field_flag(const std::string& name) {
    if (name == "Q") return Field::rational;
    if (name == "Qi") return Field::gaussian_rational;
    throw Error(Errc::bad_params, "--field must be Q or Qi");
}

std::vector<FieldScalar> parse_scalar_list(const std::string& text, Field f) {
    std::vector<FieldScalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error(Errc::parse_error, "empty list entry");
        out.push_back(scalar_parse(item.substr(b, e - b + 1), f));
    }
    if (out.empty()) throw Error(Errc::empty_sequence, "empty scalar list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error(Errc::parse_error, "bad integer \"" + item + "\"");
        }
    }
    if (out.empty()) throw Error(Errc::empty_sequence, "empty integer list");
    return out;
}

int cmd_verify(const std::string& c_path, const std::string& d_path) {
    LPMatrix c = matrix_from_text(read_text_file(c_path));
    LPMatrix d = matrix_from_text(read_text_file(d_path));
    PairCheckReport rep = check_pseudoidentity(c, d);
    if (rep.valid()) {
        std::cout << "pseudoidentity pair: VALID (k_c=" << rep.k_c << ", k_d=" << rep.k_d << ")";
        if (rep.degenerate) std::cout << " -- degenerate (constant) pair";
        std::cout << "\n";
    } else {
        std::cout << "pseudoidentity pair: INVALID\n";
    }
    std::cout << "rank=" << rep.rank << "\n"
              << "support_c=" << pf(rep.support_c_ok) << "\n"
              << "support_d=" << pf(rep.support_d_ok) << "\n"
              << "product_identity=" << pf(rep.product_ok) << "\n"
              << "eval_one_c=" << pf(rep.eval_one_c_ok) << "\n"
              << "eval_one_d=" << pf(rep.eval_one_d_ok) << "\n"
              << "det_c=" << pf(rep.det_c_ok) << "\n"
              << "det_d=" << pf(rep.det_d_ok) << "\n";
    if (rep.support_c_ok) std::cout << "k_c=" << rep.k_c << "\n";
    if (rep.support_d_ok) std::cout << "k_d=" << rep.k_d << "\n";
    std::cout << "degenerate=" << tf(rep.degenerate) << "\n"
              << "valid=" << tf(rep.valid()) << "\n";
    if (!rep.valid()) {
        if (!rep.support_c_ok || !rep.support_d_ok)
            std::cout << "violation=SUPPORT_VIOLATION\n";
        if (!rep.product_ok) std::cout << "violation=PRODUCT_NOT_IDENTITY\n";
        if (!rep.eval_one_c_ok || !rep.eval_one_d_ok)
            std::cout << "violation=EVAL_ONE_NOT_IDENTITY\n";
        if (!rep.det_c_ok || !rep.det_d_ok) std::cout << "violation=NOT_UNIMODULAR\n";
        return kExitViolation;
    }
    return kExitOk;
}

void print_factorization_report(const FactorizationReport& rep) {
    std::cout << "factors_valid=" << pf(rep.factors_valid) << "\n"
              << "compose_left=" << (rep.compose_left_ok ? "match" : "mismatch") << "\n"
              << "compose_right=" << (rep.compose_right_ok ? "match" : "mismatch") << "\n"
              << "sum_k=" << rep.sum_k << "\n"
              << "deg_t=" << rep.deg_t << "\n"
              << "genus=" << rep.genus << "\n"
              << "degree_bound=" << pf(rep.degree_bound_ok) << "\n"
              << "genus_sum_reading=" << (rep.genus_sum_reading ? "holds" : "violated") << "\n"
              << "valid=" << tf(rep.all_ok()) << "\n";
}

int cmd_factor(const std::string& input, const std::string& strategy, const std::string& emit,
               const std::string& output, const std::string& verify_path) {
    LPMatrix c = matrix_from_text(read_text_file(input));
    if (strategy == "rank2-euclid" && c.rank() != 2)
        throw Error(Errc::rank_not_two, "strategy rank2-euclid needs a rank-2 input");

    if (!verify_path.empty()) {
        if (emit == "lattice") {
            LatticeForm lf = lattice_from_text(read_text_file(verify_path));
            bool replay_ok = lattice_replay(lf) == c;
            bool constant_ok = lattice_constant_subproduct(lf).is_identity();
            std::cout << "lattice verification\n"
                      << "replay=" << (replay_ok ? "match" : "mismatch") << "\n"
                      << "constant_stage_product=" << pf(constant_ok) << "\n"
                      << "stages=" << lf.stages.size() << "\n"
                      << "valid=" << tf(replay_ok && constant_ok) << "\n";
            return replay_ok && constant_ok ? kExitOk : kExitViolation;
        }
        NilFactorization fac = factorization_from_text(read_text_file(verify_path));
        FactorizationReport rep = verify_factorization(c, fac);
        std::cout << "factorization verification (r=" << fac.factors.size() << ")\n"
                  << "r=" << fac.factors.size() << "\n";
        print_factorization_report(rep);
        return rep.all_ok() ? kExitOk : kExitViolation;
    }

    if (emit == "lattice") {
        LatticeForm lf = lattice_form(c);
        if (!(lattice_replay(lf) == c))
            throw Error(Errc::residual_constant_not_identity, "lattice replay mismatch");
        if (!lattice_constant_subproduct(lf).is_identity())
            throw Error(Errc::residual_constant_not_identity,
                        "constant-stage subproduct is not the identity");
        int max_k = 0;
        for (const auto& s : lf.stages) max_k = std::max(max_k, s.k);
        write_text_file(output, lattice_to_text(lf));
        std::cout << "lattice form with " << lf.stages.size() << " stages\n"
                  << "stages=" << lf.stages.size() << "\n"
                  << "max_stage_shift=" << max_k << "\n"
                  << "genus=" << genus(c) << "\n"
                  << "replay=match\n"
                  << "constant_stage_product=pass\n"
                  << "output=" << output << "\n";
        return kExitOk;
    }

    NilFactorization fac =
        strategy == "rank2-euclid" ? factorize_rank2_euclid(c) : factorize_nilpotent(c);
    FactorizationReport rep = verify_factorization(c, fac);
    if (!rep.all_ok())
        throw Error(Errc::residual_constant_not_identity, "factorization failed self-check");
    write_text_file(output, factorization_to_text(fac));
    std::cout << "nilpotent factorization with r=" << fac.factors.size() << " factors\n"
              << "strategy=" << strategy << "\n"
              << "r=" << fac.factors.size() << "\n";
    print_factorization_report(rep);
    std::cout << "output=" << output << "\n";
    return kExitOk;
}

int cmd_generate(const std::string& kind, Field field, const std::string& a_list,
                 const std::string& m_list, int rank, int num_factors, int max_shift,
                 std::uint64_t seed, const std::string& out_c, const std::string& out_d) {
    PseudoidentityPair pair;
    if (kind == "example21") {
        if (a_list.empty() || m_list.empty())
            throw Error(Errc::bad_params, "example21 needs --a and --m");
        pair = example_pair(parse_scalar_list(a_list, field), parse_int_list(m_list));
    } else if (kind == "random") {
        pair = random_pair(rank, num_factors, max_shift, seed, field);
    } else {
        throw Error(Errc::bad_params, "--kind must be example21 or random");
    }
    write_text_file(out_c, matrix_to_text(pair.C));
    write_text_file(out_d, matrix_to_text(pair.D));
    std::cout << "generated pseudoidentity pair (" << kind << ")\n"
              << "rank=" << pair.C.rank() << "\n"
              << "field=" << field_name(pair.C.field()) << "\n"
              << "k_c=" << pair.k_c << "\n"
              << "k_d=" << pair.k_d << "\n"
              << "out_c=" << out_c << "\n"
              << "out_d=" << out_d << "\n";
    return kExitOk;
}

int cmd_demo_counterexample() {
    const Field f = Field::rational;
    std::vector<FieldScalar> a{FieldScalar::one(f), FieldScalar::one(f)};
    PseudoidentityPair pair = example_pair(a, {1, 2});
    ConjectureProbeReport probe = probe_conjecture(pair);

    std::cout << "counterexample to the invertible-block conjecture (rank 2)\n\n";
    std::cout << "pair: C(z) with blocks C_0=[[-1,2],[-2,3]], C_1=C_2=[[1,-1],[1,-1]] "
                 "(k_c=2, k_d=-2)\n";
    std::cout << "smallest p with C_{k_c-p} != 0: p=" << probe.p << "\n";
    std::cout << "det C_{k_c-p} = " << scalar_format(probe.c_block.det())
              << " (singular), det D_{k_d+p} = " << scalar_format(probe.d_block.det()) << "\n";
    std::cout << "p=" << probe.p << "\n"
              << "c_block_det=" << scalar_format(probe.c_block.det()) << "\n"
              << "d_block_det=" << scalar_format(probe.d_block.det()) << "\n"
              << "c_block_invertible=" << tf(probe.c_block_invertible) << "\n"
              << "d_block_invertible=" << tf(probe.d_block_invertible) << "\n"
              << "conjecture_holds=" << tf(probe.conjecture_holds) << "\n";

    std::cout << "\nweaker condition -C_{k_c-p} N + C_{k_c} = 0 over nilpotent N:\n"
              << "a nilpotent solution would make I - N singular, so none exists\n"
              << "weaker_linear_solvable=" << tf(probe.weaker_linear_solvable) << "\n"
              << "weaker_condition_solvable=" << tf(probe.weaker_condition_solvable) << "\n";

    // the valid factorization: C = (I - N + N z^-1)(I - N + N z^-2), N = [[1,-1],[1,-1]]
    NilFactorization fac;
    fac.rank = 2;
    fac.field = f;
    ConstMatrix n(2, f);
    n.at(0, 0) = FieldScalar::one(f);
    n.at(0, 1) = FieldScalar::from_int(-1, f);
    n.at(1, 0) = FieldScalar::one(f);
    n.at(1, 1) = FieldScalar::from_int(-1, f);
    fac.factors.push_back(make_primitive_factor(n, 1));
    fac.factors.push_back(make_primitive_factor(n, 2));
    FactorizationReport rep = verify_factorization(pair.C, fac);

    std::cout << "\nthe pair still factors into nilpotent primitives:\n"
              << "C = (I - N + N z^-1)(I - N + N z^-2) with N = [[1,-1],[1,-1]], N^2 = 0\n"
              << "factor_count=" << fac.factors.size() << "\n"
              << "factors_valid=" << pf(rep.factors_valid) << "\n"
              << "compose_left=" << (rep.compose_left_ok ? "match" : "mismatch") << "\n"
              << "compose_right=" << (rep.compose_right_ok ? "match" : "mismatch") << "\n"
              << "sum_k=" << rep.sum_k << "\n"
              << "deg_t=" << rep.deg_t << "\n"
              << "degrees_add_up=" << tf(rep.sum_k == rep.deg_t) << "\n"
              << "note=sum of factor shifts exceeds the degree; the degrees do not add up\n";
    return kExitOk;
}

int cmd_wavelet_verify(const std::string& l_path, const std::string& r_path) {
    LPMatrix l = matrix_from_text(read_text_file(l_path));
    LPMatrix r = matrix_from_text(read_text_file(r_path));
    WaveletCheckReport rep = check_biorthogonal(l, r);
    std::cout << (rep.valid() ? "biorthogonal wavelet pair: VALID\n"
                              : "biorthogonal wavelet pair: INVALID\n")
              << "rank=" << rep.rank << "\n"
              << "quadratic=" << pf(rep.quadratic_ok) << "\n"
              << "linear_l=" << pf(rep.linear_l_ok) << "\n"
              << "linear_r=" << pf(rep.linear_r_ok) << "\n"
              << "genus_l=" << rep.genus_l << "\n"
              << "genus_r=" << rep.genus_r << "\n"
              << "genus=" << rep.genus << "\n"
              << "valid=" << tf(rep.valid()) << "\n";
    if (!rep.valid()) {
        if (!rep.quadratic_ok) std::cout << "violation=QUADRATIC_VIOLATION\n";
        if (!rep.linear_l_ok || !rep.linear_r_ok) std::cout << "violation=LINEAR_VIOLATION\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_wavelet_compose(const std::string& bundle_path, const std::string& out_l,
                        const std::string& out_r) {
    WaveletFactorizationBundle bundle = bundle_from_text(read_text_file(bundle_path));
    CompositionReport rep = compose_biorthogonal(bundle);
    write_text_file(out_l, matrix_to_text(rep.pair.L));
    write_text_file(out_r, matrix_to_text(rep.pair.R));
    std::cout << "composed biorthogonal wavelet pair\n"
              << "rank=" << rep.pair.rank << "\n"
              << "genus=" << rep.pair.genus << "\n"
              << "b=" << rep.b << "\n"
              << "d=" << rep.d << "\n"
              << "k0=" << rep.k0 << "\n"
              << "det_exponent_consistent=" << tf(rep.det_exponent_consistent) << "\n"
              << "nil_genus=" << rep.nil_genus << "\n"
              << "genus_ok=" << tf(rep.genus_ok) << "\n"
              << "out_l=" << out_l << "\n"
              << "out_r=" << out_r << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pseudoidentity / biorthogonal wavelet matrix pair toolkit"};
    app.require_subcommand(1);

    std::string c_path, d_path;
    auto* verify = app.add_subcommand("verify", "check a pseudoidentity pair document");
    verify->add_option("--c", c_path, "C matrix document")->required();
    verify->add_option("--d", d_path, "D matrix document")->required();

    std::string f_input, f_strategy = "general", f_emit = "nilpotent", f_output = "-",
                f_verify_path;
    auto* factor = app.add_subcommand("factor", "factor C into nilpotent primitives");
    factor->add_option("--input", f_input, "C matrix document")->required();
    factor->add_option("--strategy", f_strategy, "general or rank2-euclid")
        ->check(CLI::IsMember({"general", "rank2-euclid"}));
    factor->add_option("--emit", f_emit, "nilpotent or lattice")
        ->check(CLI::IsMember({"nilpotent", "lattice"}));
    factor->add_option("--output", f_output, "output document path");
    factor->add_option("--verify", f_verify_path,
                       "verify an existing factorization/lattice document instead of factoring");

    std::string g_kind, g_field = "Q", g_a, g_m;
    int g_rank = 2, g_num_factors = 3, g_max_shift = 3;
    std::uint64_t g_seed = 0;
    std::string g_out_c, g_out_d;
    auto* generate = app.add_subcommand("generate", "emit a pseudoidentity pair");
    generate->add_option("--kind", g_kind, "example21 or random")->required();
    generate->add_option("--field", g_field, "Q or Qi");
    generate->add_option("--a", g_a, "comma-separated nonzero coefficients (example21)");
    generate->add_option("--m", g_m, "comma-separated strictly increasing shifts (example21)");
    generate->add_option("--rank", g_rank, "matrix rank (random)");
    generate->add_option("--num-factors", g_num_factors, "number of random factors (random)");
    generate->add_option("--max-shift", g_max_shift, "largest factor shift (random)");
    generate->add_option("--seed", g_seed, "random seed (random)");
    generate->add_option("--out-c", g_out_c, "output path for C")->required();
    generate->add_option("--out-d", g_out_d, "output path for D")->required();

    auto* demo = app.add_subcommand("demo-counterexample",
                                    "reproduce the rank-2 conjecture counterexample");

    auto* wavelet = app.add_subcommand("wavelet", "biorthogonal wavelet pair commands");
    wavelet->require_subcommand(1);
    std::string w_l, w_r;
    auto* wverify = wavelet->add_subcommand("verify", "check a biorthogonal pair");
    wverify->add_option("--l", w_l, "analysis matrix document")->required();
    wverify->add_option("--r", w_r, "synthesis matrix document")->required();
    std::string w_bundle, w_out_l, w_out_r;
    auto* wcompose = wavelet->add_subcommand("compose", "compose a factorization bundle");
    wcompose->add_option("--bundle", w_bundle, "bundle document")->required();
    wcompose->add_option("--out-l", w_out_l, "output path for L")->required();
    wcompose->add_option("--out-r", w_out_r, "output path for R")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints its own message; normalize the exit code to the
        // usage class unless this is --help
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(c_path, d_path);
        if (factor->parsed())
            return cmd_factor(f_input, f_strategy, f_emit, f_output, f_verify_path);
        if (generate->parsed())
            return cmd_generate(g_kind, parse_field_flag(g_field), g_a, g_m, g_rank,
                                g_num_factors, g_max_shift, g_seed, g_out_c, g_out_d);
        if (demo->parsed()) return cmd_demo_counterexample();
        if (wavelet->parsed()) {
            if (wverify->parsed()) return cmd_wavelet_verify(w_l, w_r);
            if (wcompose->parsed()) return cmd_wavelet_compose(w_bundle, w_out_l, w_out_r);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << "error=" << errc_name(e.code()) << "\n";
        return errc_is_usage(e.code()) ? kExitUsage : kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
