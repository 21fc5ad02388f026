// Command-line front end: structure validation, oracle-equivalence checks,
// operation-count reports, and micro-benchmarks. JSON output is the machine
// interface; identical invocations with identical seeds produce identical
// JSON apart from the elapsed_ms fields.
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
// parameter error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "faststructs/bilinear.hpp"
#include "faststructs/dft.hpp"
#include "faststructs/negacyclic.hpp"
#include "faststructs/ntt.hpp"
#include "faststructs/parallel_fir.hpp"
#include "faststructs/rng.hpp"
#include "faststructs/scalar.hpp"

using json = nlohmann::json;
using namespace faststructs;

namespace {

constexpr int kSchemaVersion = 1;

int log_level() {
    const char* env = std::getenv("FAST_STRUCTURES_LOG");
    return env ? std::atoi(env) : 0;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// file formats
// ---------------------------------------------------------------------------

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

// CSV of integers (comma/space/newline separated), or raw little-endian
// int64 when the file ends in .bin.
std::vector<std::int64_t> read_int_stream(const std::string& path) {
    std::vector<std::int64_t> out;
    if (ends_with(path, ".bin")) {
        std::string raw = read_file(path);
        if (raw.size() % 8 != 0) throw std::invalid_argument("binary stream not a multiple of 8 bytes");
        for (std::size_t i = 0; i + 8 <= raw.size(); i += 8) {
            std::uint64_t v = 0;
            for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(raw[i + b]);
            out.push_back(static_cast<std::int64_t>(v));
        }
        return out;
    }
    std::string text = read_file(path);
    for (char& c : text)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream is(text);
    std::int64_t v;
    while (is >> v) out.push_back(v);
    return out;
}

void write_int_stream(const std::string& path, const std::vector<std::int64_t>& v) {
    if (ends_with(path, ".bin")) {
        std::string raw;
        raw.reserve(v.size() * 8);
        for (std::int64_t x : v) {
            std::uint64_t u = static_cast<std::uint64_t>(x);
            for (int b = 0; b < 8; ++b) raw.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
        }
        write_file(path, raw);
        return;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << v[i] << "\n";
    write_file(path, os.str());
}

// CSV signal: one sample per line, "re" or "re,im".
CpxVec read_complex_stream(const std::string& path) {
    CpxVec out;
    std::istringstream is(read_file(path));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        double re = 0, im = 0;
        if (!(ls >> re)) throw std::invalid_argument("bad CSV sample: " + line);
        ls >> im;
        out.push_back({re, im});
    }
    return out;
}

void write_complex_stream(const std::string& path, const CpxVec& v) {
    std::ostringstream os;
    os.precision(17);
    for (const Cpx& c : v) os << c.real() << "," << c.imag() << "\n";
    write_file(path, os.str());
}

std::size_t hex_coeff_width(std::uint64_t q) {
    if (q - 1 <= 0xff) return 1;
    if (q - 1 <= 0xffff) return 2;
    if (q - 1 <= 0xffffffffull) return 4;
    return 8;
}

// Fixed-width little-endian bytes per coefficient, hex encoded.
std::vector<std::int64_t> decode_hex_coeffs(const std::string& hex, std::uint64_t q) {
    const std::size_t width = hex_coeff_width(q);
    if (hex.size() % (2 * width) != 0)
        throw std::invalid_argument("hex length not a whole number of coefficients");
    auto nibble = [](char c) -> std::uint64_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint64_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint64_t>(c - 'A' + 10);
        throw std::invalid_argument("bad hex digit");
    };
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < hex.size(); i += 2 * width) {
        std::uint64_t v = 0;
        for (std::size_t b = 0; b < width; ++b) {
            std::uint64_t byte = (nibble(hex[i + 2 * b]) << 4) | nibble(hex[i + 2 * b + 1]);
            v |= byte << (8 * b);
        }
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

std::string encode_hex_coeffs(const std::vector<std::int64_t>& coeffs, std::uint64_t q) {
    const std::size_t width = hex_coeff_width(q);
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (std::int64_t c : coeffs) {
        std::uint64_t v = static_cast<std::uint64_t>(c);
        for (std::size_t b = 0; b < width; ++b) {
            std::uint64_t byte = (v >> (8 * b)) & 0xff;
            out.push_back(digits[byte >> 4]);
            out.push_back(digits[byte & 0xf]);
        }
    }
    return out;
}

// {"a": [...], "b": [...]} with arrays of residues, or {"a_hex", "b_hex"}.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> read_poly_pair(
    const std::string& path, std::uint64_t q) {
    json j = json::parse(read_file(path));
    auto field = [&](const char* name, const char* hex_name) {
        if (j.contains(name)) return j.at(name).get<std::vector<std::int64_t>>();
        if (j.contains(hex_name)) return decode_hex_coeffs(j.at(hex_name).get<std::string>(), q);
        throw std::invalid_argument(std::string("input missing '") + name + "' / '" + hex_name + "'");
    };
    return {field("a", "a_hex"), field("b", "b_hex")};
}

NegacyclicElement to_element(const std::vector<std::int64_t>& coeffs, const ScalarRing& ring) {
    std::vector<Scalar> s;
    s.reserve(coeffs.size());
    for (std::int64_t c : coeffs) s.push_back(Scalar::from_int(ring, c));
    return NegacyclicElement(std::move(s));
}

std::vector<Scalar> to_scalars(const std::vector<std::int64_t>& v, const ScalarRing& ring) {
    std::vector<Scalar> s;
    s.reserve(v.size());
    for (std::int64_t c : v) s.push_back(Scalar::from_int(ring, c));
    return s;
}

std::vector<std::int64_t> from_scalars(const std::vector<Scalar>& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const Scalar& s : v)
        out.push_back(s.kind() == RingKind::ModQ ? static_cast<std::int64_t>(s.as_mod().value)
                                                 : s.as_int());
    return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct ValidateArgs {
    std::string structure = "karatsuba2";
    bool as_json = false;
};

std::string matrix_text(const char* name, const IntMatrix& m) {
    std::ostringstream os;
    os << name << " (" << m.rows << "x" << m.cols << "):\n";
    for (int r = 0; r < m.rows; ++r) {
        os << "  [";
        for (int c = 0; c < m.cols; ++c) os << (c ? " " : "") << m.at(r, c);
        os << "]\n";
    }
    return os.str();
}

int cmd_validate(const ValidateArgs& args) {
    BilinearAlgorithm alg = resolve_structure(args.structure);  // unknown/unreadable -> exit 2
    const bool ok = validate(alg);

    if (args.as_json) {
        json j = json::parse(structure_to_json(alg));
        j["schema_version"] = kSchemaVersion;
        j["valid"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::ostringstream os;
        os << "structure: " << args.structure << "  L=" << alg.input_len << " M=" << alg.mult_count
           << " K=" << alg.output_len << "\n";
        os << matrix_text("pre_h", alg.pre_h) << matrix_text("pre_x", alg.pre_x)
           << matrix_text("post", alg.post);
        os << (ok ? "valid" : "INVALID") << "\n";
        std::cout << os.str();
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckArgs {
    std::string domain;
    std::string structure = "karatsuba2";
    std::size_t level = 2;      // --L
    std::size_t taps = 8;       // --N: filter taps (fir) / signal length (dft)
    std::size_t ring_size = 8;  // --n
    std::uint64_t q = 17;
    std::size_t trials = 100;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 2048;
    std::size_t threshold = 2;
    std::size_t parallel = 2;
    bool exhaustive = false;
    bool as_json = false;
    std::string in_path, out_path, coeff_path;
};

void require_seed(const CheckArgs& a) {
    if (!a.seed && !a.exhaustive && a.in_path.empty())
        throw std::invalid_argument("randomized runs require an explicit --seed");
}

void trial_log(const std::string& line) {
    if (log_level() >= 1) std::cerr << line << "\n";
}

BilinearAlgorithm structure_for_level(std::size_t level) {
    if (level == 0 || (level & (level - 1)) != 0)
        throw std::invalid_argument("parallelism level must be a power of two");
    int k = 0;
    while ((std::size_t{1} << k) < level) ++k;
    return iterated_karatsuba(k);
}

json check_conv(const CheckArgs& args) {
    BilinearAlgorithm alg = resolve_structure(args.structure);
    const ScalarRing ring = ScalarRing::exact_int();
    json details;
    std::size_t failures = 0;

    if (!args.in_path.empty()) {
        json in = json::parse(read_file(args.in_path));
        auto h = to_scalars(in.at("h").get<std::vector<std::int64_t>>(), ring);
        auto x = to_scalars(in.at("x").get<std::vector<std::int64_t>>(), ring);
        OpCounter ctx, oracle;
        auto fast = apply_convolution(ctx, alg, h, x);
        auto want = direct_convolution(oracle, h, x);
        if (fast != want) ++failures;
        if (!args.out_path.empty())
            write_file(args.out_path, json{{"s", from_scalars(fast)}}.dump(2) + "\n");
        details["trials"] = 1;
    } else {
        SeededRng rng(*args.seed);
        for (std::size_t t = 0; t < args.trials; ++t) {
            auto h = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
            auto x = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
            OpCounter ctx, oracle;
            auto fast = apply_convolution(ctx, alg, h, x);
            auto want = direct_convolution(oracle, h, x);
            const bool ok = fast == want && ctx.mults() == static_cast<std::uint64_t>(alg.mult_count);
            if (!ok) ++failures;
            trial_log("conv trial " + std::to_string(t) + (ok ? " ok" : " FAIL"));
        }
        details["trials"] = args.trials;
    }
    details["mult_count"] = alg.mult_count;
    details["failures"] = failures;
    return details;
}

json check_fir(const CheckArgs& args) {
    BilinearAlgorithm alg = structure_for_level(args.level);
    const ScalarRing ring = ScalarRing::exact_int();
    json details;
    std::size_t failures = 0;

    if (!args.in_path.empty()) {
        if (args.coeff_path.empty()) throw std::invalid_argument("--in mode needs --coeffs");
        FirFilter f{to_scalars(read_int_stream(args.coeff_path), ring)};
        auto x = to_scalars(read_int_stream(args.in_path), ring);
        ParallelFilterState state = derive_parallel_filter(alg, f, args.level);
        OpCounter ctx, oracle;
        auto fast = run_parallel(ctx, state, x);
        auto want = serial_fir(oracle, f, x);
        for (std::size_t i = 0; i < fast.size(); ++i)
            if (fast[i] != want[i]) {
                ++failures;
                break;
            }
        if (!args.out_path.empty()) write_int_stream(args.out_path, from_scalars(fast));
        details["trials"] = 1;
        details["samples"] = x.size();
    } else {
        SeededRng rng(*args.seed);
        std::uint64_t block_cost = 0;
        for (std::size_t t = 0; t < args.trials; ++t) {
            FirFilter f{random_vector(rng, ring, args.taps)};
            auto x = random_vector(rng, ring, args.samples);
            ParallelFilterState state = derive_parallel_filter(alg, f, args.level);
            block_cost = static_cast<std::uint64_t>(alg.mult_count) *
                         (state.taps_padded() / args.level);
            OpCounter ctx, oracle;
            auto fast = run_parallel(ctx, state, x);
            auto want = serial_fir(oracle, f, x);
            bool ok = true;
            for (std::size_t i = 0; i < fast.size(); ++i)
                if (fast[i] != want[i]) {
                    ok = false;
                    break;
                }
            const std::size_t blocks = (x.size() + args.level - 1) / args.level;
            if (ctx.mults() != blocks * block_cost) ok = false;
            if (args.level == 2) {
                OpCounter d2;
                auto direct = direct_2parallel(d2, f, x);
                for (std::size_t i = 0; i < direct.size(); ++i)
                    if (direct[i] != want[i]) {
                        ok = false;
                        break;
                    }
                if (d2.mults() != blocks * 2 * state.taps_padded()) ok = false;
            }
            if (!ok) ++failures;
            trial_log("fir trial " + std::to_string(t) + (ok ? " ok" : " FAIL"));
        }
        details["trials"] = args.trials;
        details["per_block_mults"] = block_cost;
    }
    details["L"] = args.level;
    details["N"] = args.taps;
    details["failures"] = failures;
    return details;
}

json check_polymod(const CheckArgs& args) {
    const ScalarRing ring = ScalarRing::mod_q(args.q);
    json details;
    std::size_t failures = 0;
    std::size_t trials = 0;

    auto one_pair = [&](const NegacyclicElement& a, const NegacyclicElement& b) {
        OpCounter ctx;
        auto want = negacyclic_mul_direct(ctx, a, b);
        bool ok = negacyclic_mul_recursive(ctx, a, b, args.threshold) == want;
        if (a.size() >= 4 && negacyclic_mul_fast2(ctx, a, b) != want) ok = false;
        ++trials;
        if (!ok) ++failures;
        return want;
    };

    if (!args.in_path.empty()) {
        auto [av, bv] = read_poly_pair(args.in_path, args.q);
        auto p = one_pair(to_element(av, ring), to_element(bv, ring));
        if (!args.out_path.empty()) {
            auto coeffs = from_scalars(p.coeffs);
            json out = {{"n", p.size()},
                        {"q", args.q},
                        {"p", coeffs},
                        {"p_hex", encode_hex_coeffs(coeffs, args.q)}};
            write_file(args.out_path, out.dump(2) + "\n");
        }
    } else if (args.exhaustive) {
        double space = 1;
        for (std::size_t i = 0; i < 2 * args.ring_size; ++i) space *= static_cast<double>(args.q);
        if (space > 2e7) throw std::invalid_argument("exhaustive space too large; use seeded trials");
        const std::uint64_t total = static_cast<std::uint64_t>(space);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t t = code;
            std::vector<Scalar> c;
            for (std::size_t i = 0; i < 2 * args.ring_size; ++i) {
                c.push_back(Scalar::residue(static_cast<std::int64_t>(t % args.q), args.q));
                t /= args.q;
            }
            NegacyclicElement a({c.begin(), c.begin() + static_cast<std::ptrdiff_t>(args.ring_size)});
            NegacyclicElement b({c.begin() + static_cast<std::ptrdiff_t>(args.ring_size), c.end()});
            one_pair(a, b);
        }
    } else {
        SeededRng rng(*args.seed);
        for (std::size_t t = 0; t < args.trials; ++t) {
            NegacyclicElement a(random_vector(rng, ring, args.ring_size));
            NegacyclicElement b(random_vector(rng, ring, args.ring_size));
            one_pair(a, b);
            trial_log("polymod trial " + std::to_string(t));
        }
    }
    details["n"] = args.ring_size;
    details["q"] = args.q;
    details["trials"] = trials;
    details["failures"] = failures;
    return details;
}

json check_dft(const CheckArgs& args) {
    json details;
    std::size_t failures = 0;
    double worst = 0.0;

    auto run_one = [&](const CpxVec& h, const CpxVec& x) {
        OpCounter ctx, oracle;
        CpxVec fast = args.parallel == 4 ? pointwise_fast4(ctx, h, x) : pointwise_fast2(ctx, h, x);
        CpxVec want = circular_convolution_direct(oracle, h, x);
        const double err = max_rel_error(fast, want);
        worst = std::max(worst, err);
        if (err > 1e-9) ++failures;
        return fast;
    };

    if (!args.in_path.empty()) {
        if (args.coeff_path.empty()) throw std::invalid_argument("--in mode needs --coeffs");
        CpxVec h = read_complex_stream(args.coeff_path);
        CpxVec x = read_complex_stream(args.in_path);
        CpxVec y = run_one(h, x);
        if (!args.out_path.empty()) write_complex_stream(args.out_path, y);
        details["trials"] = 1;
    } else {
        SeededRng rng(*args.seed);
        for (std::size_t t = 0; t < args.trials; ++t) {
            CpxVec h(args.taps), x(args.taps);
            for (auto& v : h) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
            for (auto& v : x) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
            run_one(h, x);
            trial_log("dft trial " + std::to_string(t));
        }
        details["trials"] = args.trials;
    }
    details["N"] = args.taps;
    details["parallel"] = args.parallel;
    details["max_rel_error"] = worst;
    details["failures"] = failures;
    return details;
}

json check_ntt(const CheckArgs& args) {
    NttContext c = make_ntt_context(args.q, args.ring_size);
    const ScalarRing ring = ScalarRing::mod_q(args.q);
    json details;
    std::size_t failures = 0;
    std::size_t trials = 0;

    auto one_pair = [&](const NegacyclicElement& a, const NegacyclicElement& b) {
        OpCounter ctx;
        auto want = negacyclic_mul_direct(ctx, a, b);
        bool ok = ntt_pointwise_fast2(ctx, c, a, b) == want &&
                  ntt_pointwise_direct(ctx, c, a, b) == want;
        ++trials;
        if (!ok) ++failures;
        return want;
    };

    if (!args.in_path.empty()) {
        auto [av, bv] = read_poly_pair(args.in_path, args.q);
        auto p = one_pair(to_element(av, ring), to_element(bv, ring));
        if (!args.out_path.empty()) {
            auto coeffs = from_scalars(p.coeffs);
            json out = {{"n", p.size()},
                        {"q", args.q},
                        {"p", coeffs},
                        {"p_hex", encode_hex_coeffs(coeffs, args.q)}};
            write_file(args.out_path, out.dump(2) + "\n");
        }
    } else if (args.exhaustive) {
        double space = 1;
        for (std::size_t i = 0; i < 2 * args.ring_size; ++i) space *= static_cast<double>(args.q);
        if (space > 2e7) throw std::invalid_argument("exhaustive space too large; use seeded trials");
        const std::uint64_t total = static_cast<std::uint64_t>(space);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t t = code;
            std::vector<Scalar> cv;
            for (std::size_t i = 0; i < 2 * args.ring_size; ++i) {
                cv.push_back(Scalar::residue(static_cast<std::int64_t>(t % args.q), args.q));
                t /= args.q;
            }
            NegacyclicElement a(
                {cv.begin(), cv.begin() + static_cast<std::ptrdiff_t>(args.ring_size)});
            NegacyclicElement b({cv.begin() + static_cast<std::ptrdiff_t>(args.ring_size), cv.end()});
            one_pair(a, b);
        }
    } else {
        SeededRng rng(*args.seed);
        for (std::size_t t = 0; t < args.trials; ++t) {
            NegacyclicElement a(random_vector(rng, ring, args.ring_size));
            NegacyclicElement b(random_vector(rng, ring, args.ring_size));
            one_pair(a, b);
            trial_log("ntt trial " + std::to_string(t));
        }
    }
    details["n"] = args.ring_size;
    details["q"] = args.q;
    details["trials"] = trials;
    details["failures"] = failures;
    return details;
}

int cmd_check(const CheckArgs& args) {
    require_seed(args);
    Stopwatch watch;
    json details;
    if (args.domain == "conv")
        details = check_conv(args);
    else if (args.domain == "fir")
        details = check_fir(args);
    else if (args.domain == "polymod")
        details = check_polymod(args);
    else if (args.domain == "dft")
        details = check_dft(args);
    else if (args.domain == "ntt")
        details = check_ntt(args);
    else
        throw std::invalid_argument("unknown domain: " + args.domain);

    const bool pass = details.at("failures").get<std::size_t>() == 0;
    json out = {{"schema_version", kSchemaVersion},
                {"command", "check"},
                {"domain", args.domain},
                {"details", details},
                {"pass", pass}};
    if (args.seed) out["seed"] = *args.seed;
    out["elapsed_ms"] = watch.ms();

    std::ostringstream text;
    text << "check " << args.domain << ": " << details.at("trials").get<std::size_t>()
         << " trials, " << details.at("failures").get<std::size_t>() << " failures -> "
         << (pass ? "PASS" : "FAIL") << "\n";
    emit(out, args.as_json, text.str());
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string domain;
    std::string structure = "karatsuba2";
    std::size_t taps = 8;  // --N
    std::size_t ring_size = 16;
    std::uint64_t q = 3329;
    std::size_t level = 2;
    std::size_t parallel = 2;
    std::size_t threshold = 2;
    std::uint64_t seed = 1;
    bool as_json = false;
};

std::uint64_t ilog2_u64(std::size_t n) {
    std::uint64_t l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    return l;
}

json report_record(const ReportArgs& args) {
    json rec = {{"schema_version", kSchemaVersion}, {"command", "report"}, {"domain", args.domain}};
    SeededRng rng(args.seed);

    if (args.domain == "conv") {
        BilinearAlgorithm alg = resolve_structure(args.structure);
        const ScalarRing ring = ScalarRing::exact_int();
        auto h = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
        auto x = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
        OpCounter fast_ctx, direct_ctx;
        bool equal = apply_convolution(fast_ctx, alg, h, x) == direct_convolution(direct_ctx, h, x);
        rec["params"] = {{"structure", args.structure}, {"L", alg.input_len}};
        rec["measured"] = {{"fast_mults", fast_ctx.mults()}, {"direct_mults", direct_ctx.mults()}};
        rec["formula"] = {{"fast_mults", alg.mult_count},
                          {"direct_mults", alg.input_len * alg.input_len}};
        rec["match"] = {
            {"fast_mults", fast_ctx.mults() == static_cast<std::uint64_t>(alg.mult_count)},
            {"direct_mults",
             direct_ctx.mults() == static_cast<std::uint64_t>(alg.input_len * alg.input_len)},
            {"oracle", equal}};
    } else if (args.domain == "fir") {
        BilinearAlgorithm alg = structure_for_level(args.level);
        const ScalarRing ring = ScalarRing::exact_int();
        FirFilter f{random_vector(rng, ring, args.taps)};
        ParallelFilterState state = derive_parallel_filter(alg, f, args.level);
        auto x = random_vector(rng, ring, args.level * 64);
        OpCounter ctx;
        run_parallel(ctx, state, x);
        const std::uint64_t blocks = x.size() / args.level;
        const std::uint64_t per_block = ctx.mults() / blocks;
        const std::uint64_t formula =
            static_cast<std::uint64_t>(alg.mult_count) * (state.taps_padded() / args.level);
        rec["params"] = {{"L", args.level}, {"N", args.taps}, {"N_padded", state.taps_padded()}};
        rec["measured"] = {{"per_block_mults", per_block}};
        rec["formula"] = {{"per_block_mults", formula}};
        json match = {{"per_block_mults", per_block == formula}};
        if (args.level == 2) {
            OpCounter d2;
            direct_2parallel(d2, f, x);
            const std::uint64_t direct_block = d2.mults() / blocks;
            rec["measured"]["direct2_per_block_mults"] = direct_block;
            rec["formula"]["direct2_per_block_mults"] = 2 * state.taps_padded();
            match["direct2_per_block_mults"] = direct_block == 2 * state.taps_padded();
        }
        rec["match"] = match;
    } else if (args.domain == "polymod") {
        const ScalarRing ring = ScalarRing::mod_q(args.q);
        NegacyclicElement a(random_vector(rng, ring, args.ring_size));
        NegacyclicElement b(random_vector(rng, ring, args.ring_size));
        OpCounter fast_ctx, direct_ctx;
        bool equal = negacyclic_mul_recursive(fast_ctx, a, b, args.threshold) ==
                     negacyclic_mul_direct(direct_ctx, a, b);
        const std::size_t clamped = std::max<std::size_t>(args.threshold, 2);
        const std::uint64_t k =
            args.ring_size > clamped ? ilog2_u64(args.ring_size) - ilog2_u64(clamped) : 0;
        std::uint64_t formula = 1;
        for (std::uint64_t i = 0; i < k; ++i) formula *= 3;
        const std::uint64_t base = args.ring_size >> k;
        formula *= base * base;
        rec["params"] = {{"n", args.ring_size}, {"q", args.q}, {"threshold", args.threshold}};
        rec["measured"] = {{"fast_mults", fast_ctx.mults()}, {"direct_mults", direct_ctx.mults()}};
        rec["formula"] = {{"fast_mults", formula}, {"direct_mults", args.ring_size * args.ring_size}};
        rec["match"] = {{"fast_mults", fast_ctx.mults() == formula}, {"oracle", equal}};
    } else if (args.domain == "dft") {
        const std::size_t n = args.taps;
        CpxVec h(n), x(n);
        for (auto& v : h) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
        for (auto& v : x) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
        OpCounter ctx, oracle;
        CpxVec fast = args.parallel == 4 ? pointwise_fast4(ctx, h, x) : pointwise_fast2(ctx, h, x);
        const double err = max_rel_error(fast, circular_convolution_direct(oracle, h, x));
        const std::uint64_t logn = ilog2_u64(n);
        const std::uint64_t adds_outside = ctx.adds() - ctx.label_total("fft").adds;
        rec["params"] = {{"N", n}, {"parallel", args.parallel}};
        rec["measured"] = {{"mults", ctx.mults()},
                           {"adds_outside_fft", adds_outside},
                           {"max_rel_error", err}};
        if (args.parallel == 4) {
            const std::uint64_t formula_mults = 3 * n / 2 * logn;
            const std::uint64_t adds_reference = 27 * n / 4;
            rec["formula"] = {{"mults", formula_mults}, {"adds_reference", adds_reference}};
            rec["match"] = {{"mults", ctx.mults() == formula_mults},
                            {"adds_reference", adds_outside == adds_reference}};
            rec["note"] =
                adds_outside == adds_reference
                    ? "measured non-FFT adds equal the 27N/4 reference"
                    : "measured non-FFT adds differ from the 27N/4 reference; the reference "
                      "does not pin down a phase-combination order, and this implementation "
                      "combines phases via the nested iterated 2x2 structure";
        } else {
            const std::uint64_t formula_mults = 3 * n / 2 * logn + n / 2;
            const std::uint64_t formula_adds = 5 * n / 2;
            rec["formula"] = {{"mults", formula_mults}, {"adds_outside_fft", formula_adds}};
            rec["match"] = {{"mults", ctx.mults() == formula_mults},
                            {"adds_outside_fft", adds_outside == formula_adds}};
        }
    } else if (args.domain == "ntt") {
        NttContext c = make_ntt_context(args.q, args.ring_size);
        const ScalarRing ring = ScalarRing::mod_q(args.q);
        NegacyclicElement a(random_vector(rng, ring, args.ring_size));
        NegacyclicElement b(random_vector(rng, ring, args.ring_size));
        OpCounter direct_ctx, fast_ctx;
        ntt_pointwise_direct(direct_ctx, c, a, b);
        ntt_pointwise_fast2(fast_ctx, c, a, b);
        const std::uint64_t direct_stage = direct_ctx.mults() - direct_ctx.label_total("ntt").mults;
        const std::uint64_t fast_stage = fast_ctx.mults() - fast_ctx.label_total("ntt").mults;
        rec["params"] = {{"n", args.ring_size}, {"q", args.q}, {"m", c.m}};
        rec["measured"] = {{"direct_pointwise_mults", direct_stage},
                           {"fast2_pointwise_mults", fast_stage},
                           {"transform_mults", fast_ctx.label_total("ntt").mults}};
        // structural counts: 5 vs 4 length-m vector products; there is no
        // closed-form reference for the NTT total
        rec["formula"] = {{"direct_pointwise_mults", 5 * c.m}, {"fast2_pointwise_mults", 4 * c.m}};
        rec["match"] = {{"direct_pointwise_mults", direct_stage == 5 * c.m},
                        {"fast2_pointwise_mults", fast_stage == 4 * c.m}};
    } else {
        throw std::invalid_argument("unknown domain: " + args.domain);
    }
    return rec;
}

int cmd_report(const ReportArgs& args) {
    Stopwatch watch;
    json rec = report_record(args);
    bool all_match = true;
    if (rec.contains("match"))
        for (const auto& [key, value] : rec.at("match").items())
            if (!value.get<bool>()) all_match = false;
    rec["pass"] = all_match;
    rec["elapsed_ms"] = watch.ms();

    std::ostringstream text;
    text << "report " << args.domain << "\n";
    text << "  measured: " << rec.at("measured").dump() << "\n";
    if (rec.contains("formula")) text << "  formula:  " << rec.at("formula").dump() << "\n";
    if (rec.contains("note")) text << "  note: " << rec.at("note").get<std::string>() << "\n";
    text << "  " << (all_match ? "match" : "MISMATCH") << "\n";
    emit(rec, args.as_json, text.str());
    return all_match ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string domain;
    std::size_t taps = 256;  // --N
    std::size_t ring_size = 256;
    std::uint64_t q = 3329;
    std::size_t level = 2;
    std::size_t parallel = 2;
    std::size_t threshold = 2;
    std::size_t repeats = 10;
    std::uint64_t seed = 1;
    bool as_json = false;
};

template <class F>
double median_ms(std::size_t repeats, F&& body) {
    std::vector<double> times;
    times.reserve(repeats);
    for (std::size_t i = 0; i < repeats; ++i) {
        Stopwatch w;
        body();
        times.push_back(w.ms());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

int cmd_bench(const BenchArgs& args) {
    if (args.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
    SeededRng rng(args.seed);
    Stopwatch watch;
    json out = {{"schema_version", kSchemaVersion},
                {"command", "bench"},
                {"domain", args.domain},
                {"repeats", args.repeats}};

    if (args.domain == "conv") {
        BilinearAlgorithm alg = structure_for_level(args.level);
        const ScalarRing ring = ScalarRing::exact_int();
        auto h = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
        auto x = random_vector(rng, ring, static_cast<std::size_t>(alg.input_len));
        out["params"] = {{"L", args.level}};
        out["fast_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            apply_convolution(ctx, alg, h, x);
        });
        out["direct_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            direct_convolution(ctx, h, x);
        });
    } else if (args.domain == "fir") {
        BilinearAlgorithm alg = structure_for_level(args.level);
        const ScalarRing ring = ScalarRing::exact_int();
        FirFilter f{random_vector(rng, ring, args.taps)};
        auto x = random_vector(rng, ring, 4096);
        out["params"] = {{"L", args.level}, {"N", args.taps}, {"samples", x.size()}};
        out["fast_ms"] = median_ms(args.repeats, [&] {
            ParallelFilterState state = derive_parallel_filter(alg, f, args.level);
            OpCounter ctx;
            run_parallel(ctx, state, x);
        });
        out["direct_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            serial_fir(ctx, f, x);
        });
    } else if (args.domain == "polymod") {
        const ScalarRing ring = ScalarRing::mod_q(args.q);
        NegacyclicElement a(random_vector(rng, ring, args.ring_size));
        NegacyclicElement b(random_vector(rng, ring, args.ring_size));
        out["params"] = {{"n", args.ring_size}, {"q", args.q}, {"threshold", args.threshold}};
        out["fast_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            negacyclic_mul_recursive(ctx, a, b, args.threshold);
        });
        out["direct_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            negacyclic_mul_direct(ctx, a, b);
        });
    } else if (args.domain == "dft") {
        CpxVec h(args.taps), x(args.taps);
        for (auto& v : h) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
        for (auto& v : x) v = Cpx{rng.uniform_pm1(), rng.uniform_pm1()};
        out["params"] = {{"N", args.taps}, {"parallel", args.parallel}};
        out["fast_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            if (args.parallel == 4)
                pointwise_fast4(ctx, h, x);
            else
                pointwise_fast2(ctx, h, x);
        });
        out["direct_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            pointwise_direct(ctx, h, x);
        });
    } else if (args.domain == "ntt") {
        NttContext c = make_ntt_context(args.q, args.ring_size);
        const ScalarRing ring = ScalarRing::mod_q(args.q);
        NegacyclicElement a(random_vector(rng, ring, args.ring_size));
        NegacyclicElement b(random_vector(rng, ring, args.ring_size));
        out["params"] = {{"n", args.ring_size}, {"q", args.q}};
        out["fast_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            ntt_pointwise_fast2(ctx, c, a, b);
        });
        out["direct_ms"] = median_ms(args.repeats, [&] {
            OpCounter ctx;
            ntt_pointwise_direct(ctx, c, a, b);
        });
    } else {
        throw std::invalid_argument("unknown domain: " + args.domain);
    }
    out["elapsed_ms"] = watch.ms();

    std::ostringstream text;
    text << "bench " << args.domain << ": fast " << out.at("fast_ms").get<double>()
         << " ms, direct " << out.at("direct_ms").get<double>() << " ms (median of "
         << args.repeats << ")\n";
    emit(out, args.as_json, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fast-structures: one bilinear fast-multiplication kernel across convolution, "
                 "parallel FIR filtering, negacyclic polynomial multiplication, and pointwise "
                 "multiplication in the DFT and NTT domains"};
    app.require_subcommand(1);

    ValidateArgs vargs;
    CLI::App* validate_cmd = app.add_subcommand("validate", "validate a bilinear structure");
    validate_cmd->add_option("--structure", vargs.structure, "karatsuba2, iter:k, or a JSON file");
    validate_cmd->add_flag("--json", vargs.as_json, "JSON output");

    CheckArgs cargs;
    CLI::App* check_cmd = app.add_subcommand("check", "oracle-equivalence checks");
    check_cmd->add_option("--domain", cargs.domain, "conv|fir|polymod|dft|ntt")->required();
    check_cmd->add_option("--structure", cargs.structure, "bilinear structure (conv)");
    check_cmd->add_option("--L", cargs.level, "parallelism level (fir)");
    check_cmd->add_option("--N", cargs.taps, "filter taps (fir) / signal length (dft)");
    check_cmd->add_option("--n", cargs.ring_size, "ring size (polymod/ntt)");
    check_cmd->add_option("--q", cargs.q, "modulus (polymod/ntt)");
    check_cmd->add_option("--trials", cargs.trials, "seeded trial count");
    check_cmd->add_option("--seed", cargs.seed, "PRNG seed (required for randomized runs)");
    check_cmd->add_option("--samples", cargs.samples, "stream length per trial (fir)");
    check_cmd->add_option("--threshold", cargs.threshold, "recursion base size (polymod)");
    check_cmd->add_option("--parallel", cargs.parallel, "2 or 4 (dft)");
    check_cmd->add_flag("--exhaustive", cargs.exhaustive, "sweep the whole coefficient space");
    check_cmd->add_flag("--json", cargs.as_json, "JSON output");
    check_cmd->add_option("--in", cargs.in_path, "input file (single-shot mode)");
    check_cmd->add_option("--out", cargs.out_path, "output file for the fast path's result");
    check_cmd->add_option("--coeffs", cargs.coeff_path, "coefficient/filter input file");

    ReportArgs rargs;
    CLI::App* report_cmd = app.add_subcommand("report", "operation-count report");
    report_cmd->add_option("--domain", rargs.domain, "conv|fir|polymod|dft|ntt")->required();
    report_cmd->add_option("--structure", rargs.structure, "bilinear structure (conv)");
    report_cmd->add_option("--N", rargs.taps, "filter taps (fir) / signal length (dft)");
    report_cmd->add_option("--n", rargs.ring_size, "ring size (polymod/ntt)");
    report_cmd->add_option("--q", rargs.q, "modulus (polymod/ntt)");
    report_cmd->add_option("--L", rargs.level, "parallelism level (fir)");
    report_cmd->add_option("--parallel", rargs.parallel, "2 or 4 (dft)");
    report_cmd->add_option("--threshold", rargs.threshold, "recursion base size (polymod)");
    report_cmd->add_option("--seed", rargs.seed, "PRNG seed for the measurement input");
    report_cmd->add_flag("--json", rargs.as_json, "JSON output");

    BenchArgs bargs;
    CLI::App* bench_cmd = app.add_subcommand("bench", "wall-clock micro-benchmark");
    bench_cmd->add_option("--domain", bargs.domain, "conv|fir|polymod|dft|ntt")->required();
    bench_cmd->add_option("--N", bargs.taps, "filter taps / signal length");
    bench_cmd->add_option("--n", bargs.ring_size, "ring size");
    bench_cmd->add_option("--q", bargs.q, "modulus");
    bench_cmd->add_option("--L", bargs.level, "parallelism level");
    bench_cmd->add_option("--parallel", bargs.parallel, "2 or 4 (dft)");
    bench_cmd->add_option("--threshold", bargs.threshold, "recursion base size (polymod)");
    bench_cmd->add_option("--repeats", bargs.repeats, "sample count, median reported");
    bench_cmd->add_option("--seed", bargs.seed, "PRNG seed for the input");
    bench_cmd->add_flag("--json", bargs.as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(vargs);
        if (check_cmd->parsed()) return cmd_check(cargs);
        if (report_cmd->parsed()) return cmd_report(rargs);
        if (bench_cmd->parsed()) return cmd_bench(bargs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
