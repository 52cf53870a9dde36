// Command-line front end: Monte Carlo BLER runs, early-termination gain
// sweeps, metric-threshold computation, and one-shot decoding of an LLR file.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "permrm/errors.hpp"
#include "permrm/perm_decoder.hpp"
#include "permrm/rm_code.hpp"
#include "permrm/scl.hpp"
#include "permrm/simulation.hpp"
#include "permrm/threshold.hpp"

namespace {

// "bb,snr:5e-4,rep:8" -> flags in the simulation config
void parse_et(const std::string& text, permrm::SimConfig& cfg) {
    if (text.empty() || text == "none") return;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::string head = token, arg;
        if (auto colon = token.find(':'); colon != std::string::npos) {
            head = token.substr(0, colon);
            arg = token.substr(colon + 1);
        }
        try {
            if (head == "bb") {
                cfg.et_branch_bound = true;
            } else if (head == "snr") {
                cfg.et_snr_threshold = true;
                if (!arg.empty()) cfg.p_target = std::stod(arg);
            } else if (head == "rep") {
                cfg.et_repetition = true;
                if (!arg.empty()) cfg.repeat_stop = std::stoi(arg);
            } else {
                throw std::invalid_argument("unknown early-termination token '" + token +
                                            "' (expected bb, snr[:p], rep[:count])");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad early-termination argument in '" + token + "'");
        }
    }
}

// "a:step:b" (inclusive) or a comma-separated list
std::vector<double> parse_snr(const std::string& text) {
    std::vector<double> out;
    try {
        if (std::count(text.begin(), text.end(), ':') == 2) {
            std::stringstream ss(text);
            std::string a, s, b;
            std::getline(ss, a, ':');
            std::getline(ss, s, ':');
            std::getline(ss, b, ':');
            double start = std::stod(a), step = std::stod(s), stop = std::stod(b);
            if (!(step > 0.0)) throw std::invalid_argument("SNR range step must be > 0");
            if (stop < start) throw std::invalid_argument("SNR range end below start");
            long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
            for (long i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
        } else {
            std::stringstream ss(text);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("could not parse SNR grid '" + text + "'");
    }
    if (out.empty()) throw std::invalid_argument("empty SNR grid");
    return out;
}

permrm::DecoderKind parse_decoder(const std::string& name) {
    if (name == "perm") return permrm::DecoderKind::perm;
    if (name == "scl") return permrm::DecoderKind::scl;
    if (name == "sc") return permrm::DecoderKind::sc;
    throw std::invalid_argument("unknown decoder '" + name + "' (expected perm, scl, or sc)");
}

void write_records(const std::vector<permrm::SimRecord>& records, const std::string& out_path) {
    if (out_path.empty()) {
        permrm::write_csv(records, std::cout);
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    permrm::write_csv(records, f);
}

permrm::LlrVector read_llr_file(const std::string& path, std::size_t expected) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open LLR file '" + path + "'");
    permrm::LlrVector llrs;
    double v;
    while (f >> v) llrs.push_back(v);
    if (!f.eof()) throw std::invalid_argument("LLR file '" + path + "' has non-numeric content");
    if (llrs.size() != expected)
        throw std::invalid_argument("LLR file '" + path + "' holds " +
                                    std::to_string(llrs.size()) + " values, expected " +
                                    std::to_string(expected));
    for (double x : llrs)
        if (!std::isfinite(x)) throw std::invalid_argument("LLR file contains a non-finite value");
    return llrs;
}

std::string bits_to_string(const permrm::BitVector& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

struct CommonArgs {
    permrm::SimConfig cfg;
    std::string decoder = "perm";
    std::string et;
    std::string snr;
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--m", args.cfg.m, "Code length exponent, n = 2^m")->required();
    cmd->add_option("--r", args.cfg.r, "RM order")->required();
    cmd->add_option("--decoder", args.decoder, "perm | scl | sc");
    cmd->add_option("--list", args.cfg.list_size, "List size L (branches or SCL paths)");
    cmd->add_option("--et", args.et, "Early termination: comma list of bb, snr[:p], rep[:count]");
    cmd->add_option("--snr", args.snr, "SNR points: start:step:stop or comma list (dB)")
        ->required();
    cmd->add_option("--convention", [&args](const std::vector<std::string>& vals) {
            if (vals[0] == "ebn0") args.cfg.convention = permrm::SnrConvention::eb_n0;
            else if (vals[0] == "esn0") args.cfg.convention = permrm::SnrConvention::es_n0;
            else return false;
            return true;
        }, "SNR axis convention: ebn0 (default) or esn0");
    cmd->add_option("--seed", args.cfg.seed, "RNG seed");
    cmd->add_option("--grid-step", args.cfg.grid_step, "Grid step for the SNR-ET threshold");
    cmd->add_flag("--all-zero", args.cfg.all_zero, "Transmit the all-zero codeword");
    cmd->add_flag("--parallel-branches", args.cfg.parallel_branches,
                  "Independent-branch mode (SNR threshold only)");
    cmd->add_option("--out", args.out, "CSV output path (default stdout)");
}

int run(int argc, char** argv) {
    CLI::App app{"Reed-Muller permutation-decoding benchmark tool"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo BLER vs SNR");
    add_common(sim, sim_args);
    sim->add_option("--min-errors", sim_args.cfg.min_errors, "Stop after this many block errors");
    sim->add_option("--max-trials", sim_args.cfg.max_trials, "Per-point trial cap");

    CommonArgs gain_args;
    CLI::App* gain = app.add_subcommand("gain", "Early-termination gain sweep");
    add_common(gain, gain_args);
    gain->add_option("--trials", gain_args.cfg.gain_trials, "Fixed trials per SNR point");

    int thr_n = 0;
    double thr_sigma2 = 0.0, thr_p = 0.0, thr_step = 0.005;
    std::string thr_method = "precise";
    CLI::App* thr = app.add_subcommand("threshold", "Metric quantile of the all-zero penalty sum");
    thr->add_option("--n", thr_n, "Number of penalty terms (code length)")->required();
    thr->add_option("--sigma2", thr_sigma2, "BI-AWGN noise variance")->required();
    thr->add_option("--p", thr_p, "Target probability")->required();
    thr->add_option("--method", thr_method, "precise | clt");
    thr->add_option("--grid-step", thr_step, "Discretization step (precise method)");

    CommonArgs dec_args;
    std::string llr_path;
    double dec_threshold = permrm::kNoThreshold;
    CLI::App* dec = app.add_subcommand("decode", "Decode one LLR vector from a file");
    dec->add_option("--m", dec_args.cfg.m, "Code length exponent, n = 2^m")->required();
    dec->add_option("--r", dec_args.cfg.r, "RM order")->required();
    dec->add_option("--llrs", llr_path, "Whitespace-separated LLR file, 2^m values")->required();
    dec->add_option("--decoder", dec_args.decoder, "perm | scl | sc");
    dec->add_option("--list", dec_args.cfg.list_size, "List size L");
    dec->add_option("--et", dec_args.et, "Early termination: bb, rep[:count]");
    dec->add_option("--threshold", dec_threshold, "Initial metric threshold M_t <= 0");
    dec->add_option("--seed", dec_args.cfg.seed, "Seed for permutation sampling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (sim->parsed() || gain->parsed()) {
        CommonArgs& args = sim->parsed() ? sim_args : gain_args;
        args.cfg.decoder = parse_decoder(args.decoder);
        parse_et(args.et, args.cfg);
        args.cfg.snr_db = parse_snr(args.snr);
        auto records = sim->parsed() ? permrm::run_bler(args.cfg) : permrm::run_gain_sweep(args.cfg);
        write_records(records, args.out);
        return 0;
    }

    if (thr->parsed()) {
        permrm::ChannelNoise noise(thr_sigma2);
        if (thr_method == "clt") {
            std::printf("%.10g\n", permrm::clt_threshold(thr_n, noise, thr_p));
        } else if (thr_method == "precise") {
            auto res = permrm::precise_threshold_ex(thr_n, noise, thr_p, thr_step);
            std::printf("%.10g\n", res.value);
            if (res.at_point_mass) std::printf("at_point_mass=true\n");
        } else {
            throw std::invalid_argument("unknown method '" + thr_method +
                                        "' (expected precise or clt)");
        }
        return 0;
    }

    // decode
    dec_args.cfg.decoder = parse_decoder(dec_args.decoder);
    parse_et(dec_args.et, dec_args.cfg);
    permrm::CodeSpec spec = permrm::rm_code(dec_args.cfg.m, dec_args.cfg.r);
    permrm::LlrVector llrs = read_llr_file(llr_path, static_cast<std::size_t>(spec.n()));

    if (dec_args.cfg.decoder == permrm::DecoderKind::scl) {
        auto out = permrm::scl_decode(spec, llrs, dec_args.cfg.list_size);
        std::printf("decoded=true\ncodeword=%s\nmetric=%.10g\nfplus=%llu fminus=%llu\n",
                    bits_to_string(out.codeword).c_str(), out.metric,
                    static_cast<unsigned long long>(out.ops.fplus),
                    static_cast<unsigned long long>(out.ops.fminus));
        return 0;
    }

    std::vector<permrm::LayerPermutation> perms;
    if (dec_args.cfg.decoder == permrm::DecoderKind::perm) {
        permrm::Rng rng(dec_args.cfg.seed);
        perms = permrm::sample_permutations(spec.m, dec_args.cfg.list_size, rng).perms;
    } else {
        if (dec_args.cfg.list_size != 1)
            throw std::invalid_argument("decoder 'sc' runs a single branch; use --list 1");
        perms = {permrm::LayerPermutation::identity(spec.m)};
    }
    permrm::EtConfig et;
    et.branch_bound = dec_args.cfg.et_branch_bound;
    et.repetition = dec_args.cfg.et_repetition;
    et.repeat_stop = dec_args.cfg.repeat_stop;
    et.parallel = dec_args.cfg.parallel_branches;
    if (dec_args.cfg.et_snr_threshold)
        throw std::invalid_argument(
            "decode takes an explicit --threshold value; snr:<p> applies to simulate/gain");
    auto res = permrm::perm_decode(spec, llrs, perms, dec_threshold, et);
    if (res.decoded) {
        std::printf("decoded=true\ncodeword=%s\nmetric=%.10g\nfplus=%llu fminus=%llu\n",
                    bits_to_string(res.codeword).c_str(), res.metric,
                    static_cast<unsigned long long>(res.stats.total.fplus),
                    static_cast<unsigned long long>(res.stats.total.fminus));
    } else {
        std::printf("decoded=false\nfplus=%llu fminus=%llu\n",
                    static_cast<unsigned long long>(res.stats.total.fplus),
                    static_cast<unsigned long long>(res.stats.total.fminus));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const permrm::config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 1;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
