#include "faststructs/bilinear.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace faststructs {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> m) {
    rows = static_cast<int>(m.size());
    cols = rows == 0 ? 0 : static_cast<int>(m.begin()->size());
    data.reserve(static_cast<std::size_t>(rows) * cols);
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix literal");
        data.insert(data.end(), row.begin(), row.end());
    }
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (int ra = 0; ra < a.rows; ++ra)
        for (int rb = 0; rb < b.rows; ++rb)
            for (int ca = 0; ca < a.cols; ++ca)
                for (int cb = 0; cb < b.cols; ++cb)
                    out.at(ra * b.rows + rb, ca * b.cols + cb) = a.at(ra, ca) * b.at(rb, cb);
    return out;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul dimension mismatch");
    IntMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int k = 0; k < a.cols; ++k) {
            std::int64_t v = a.at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < b.cols; ++c) out.at(r, c) += v * b.at(k, c);
        }
    return out;
}

BilinearAlgorithm trivial1() {
    BilinearAlgorithm alg;
    alg.input_len = 1;
    alg.mult_count = 1;
    alg.output_len = 1;
    alg.pre_h = {{1}};
    alg.pre_x = {{1}};
    alg.post = {{1}};
    return alg;
}

BilinearAlgorithm karatsuba2() {
    BilinearAlgorithm alg;
    alg.input_len = 2;
    alg.mult_count = 3;
    alg.output_len = 3;
    alg.pre_h = {{1, 0}, {1, 1}, {0, 1}};
    alg.pre_x = alg.pre_h;
    alg.post = {{1, 0, 0}, {-1, 1, -1}, {0, 0, 1}};
    return alg;
}

BilinearAlgorithm iterated_karatsuba(int k) {
    if (k < 0) throw std::invalid_argument("iteration count must be >= 0");
    BilinearAlgorithm alg = trivial1();
    for (int i = 0; i < k; ++i) alg = iterate(alg, karatsuba2());
    return alg;
}

namespace {

bool well_formed(const BilinearAlgorithm& a) {
    return a.input_len >= 1 && a.mult_count >= 1 && a.output_len == 2 * a.input_len - 1 &&
           a.pre_h.rows == a.mult_count && a.pre_h.cols == a.input_len &&
           a.pre_x.rows == a.mult_count && a.pre_x.cols == a.input_len &&
           a.post.rows == a.output_len && a.post.cols == a.mult_count;
}

}  // namespace

BilinearAlgorithm iterate(const BilinearAlgorithm& outer, const BilinearAlgorithm& inner) {
    if (!validate(outer) || !validate(inner)) throw std::invalid_argument("iterate: invalid input algorithm");

    BilinearAlgorithm out;
    out.input_len = outer.input_len * inner.input_len;
    out.mult_count = outer.mult_count * inner.mult_count;
    out.output_len = 2 * out.input_len - 1;
    out.pre_h = kronecker(outer.pre_h, inner.pre_h);
    out.pre_x = kronecker(outer.pre_x, inner.pre_x);

    // Overlap-add: outer block k's K_in-point result lands at offset k*L_in.
    const int k_in = inner.output_len;
    const int l_in = inner.input_len;
    IntMatrix overlap(out.output_len, outer.output_len * k_in);
    for (int kb = 0; kb < outer.output_len; ++kb)
        for (int j = 0; j < k_in; ++j) overlap.at(kb * l_in + j, kb * k_in + j) = 1;
    out.post = matmul(overlap, kronecker(outer.post, inner.post));
    return out;
}

bool validate(const BilinearAlgorithm& alg) {
    if (!well_formed(alg)) return false;
    for (int k = 0; k < alg.output_len; ++k)
        for (int i = 0; i < alg.input_len; ++i)
            for (int j = 0; j < alg.input_len; ++j) {
                std::int64_t sum = 0;
                for (int m = 0; m < alg.mult_count; ++m)
                    sum += alg.post.at(k, m) * alg.pre_h.at(m, i) * alg.pre_x.at(m, j);
                if (sum != (i + j == k ? 1 : 0)) return false;
            }
    return true;
}

std::vector<Scalar> apply_matrix(OpCounter& ctx, const IntMatrix& m, std::span<const Scalar> v) {
    if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix/vector length mismatch");
    if (v.empty()) throw std::invalid_argument("apply_matrix on empty vector");
    const ScalarRing ring = v[0].ring();

    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) {
        Scalar acc = Scalar::zero(ring);
        bool first = true;
        for (int c = 0; c < m.cols; ++c) {
            const std::int64_t e = m.at(r, c);
            if (e == 0) continue;
            if (e == 1 || e == -1) {
                if (first) {
                    acc = e == 1 ? v[c] : ring_neg(v[c]);
                } else {
                    acc = e == 1 ? ring_add(ctx, acc, v[c]) : ring_sub(ctx, acc, v[c]);
                }
            } else {
                Scalar term = ring_mul(ctx, Scalar::from_int(ring, e), v[c]);
                acc = first ? term : ring_add(ctx, acc, term);
            }
            first = false;
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<Scalar> apply_convolution(OpCounter& ctx, const BilinearAlgorithm& alg,
                                      std::span<const Scalar> h, std::span<const Scalar> x) {
    if (static_cast<int>(h.size()) != alg.input_len || static_cast<int>(x.size()) != alg.input_len)
        throw std::invalid_argument("apply_convolution: input length != L");

    std::vector<Scalar> u = apply_matrix(ctx, alg.pre_h, h);
    std::vector<Scalar> v = apply_matrix(ctx, alg.pre_x, x);
    std::vector<Scalar> w;
    w.reserve(u.size());
    for (std::size_t m = 0; m < u.size(); ++m) w.push_back(ring_mul(ctx, u[m], v[m]));
    return apply_matrix(ctx, alg.post, w);
}

std::vector<Scalar> direct_convolution(OpCounter& ctx, std::span<const Scalar> h,
                                       std::span<const Scalar> x) {
    if (h.empty() || x.empty()) return {};
    const ScalarRing ring = h[0].ring();
    std::vector<Scalar> out(h.size() + x.size() - 1, Scalar::zero(ring));
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            out[i + j] = ring_add(ctx, out[i + j], ring_mul(ctx, h[i], x[j]));
    return out;
}

namespace {

nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array");
    IntMatrix m(static_cast<int>(j.size()), static_cast<int>(j[0].size()));
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(j[r].size()) != m.cols) throw std::invalid_argument("ragged matrix");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = j[r][c].get<std::int64_t>();
    }
    return m;
}

}  // namespace

std::string structure_to_json(const BilinearAlgorithm& alg) {
    nlohmann::json j;
    j["L"] = alg.input_len;
    j["M"] = alg.mult_count;
    j["pre_h"] = matrix_to_json(alg.pre_h);
    j["pre_x"] = matrix_to_json(alg.pre_x);
    j["post"] = matrix_to_json(alg.post);
    return j.dump(2);
}

BilinearAlgorithm structure_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BilinearAlgorithm alg;
    alg.input_len = j.at("L").get<int>();
    alg.mult_count = j.at("M").get<int>();
    alg.output_len = 2 * alg.input_len - 1;
    alg.pre_h = matrix_from_json(j.at("pre_h"));
    alg.pre_x = matrix_from_json(j.at("pre_x"));
    alg.post = matrix_from_json(j.at("post"));
    if (!well_formed(alg)) throw std::invalid_argument("structure dimensions are inconsistent");
    return alg;
}

BilinearAlgorithm resolve_structure(const std::string& name) {
    if (name == "karatsuba2") return karatsuba2();
    if (name == "trivial1") return trivial1();
    if (name.rfind("iter:", 0) == 0) {
        int k = std::stoi(name.substr(5));
        return iterated_karatsuba(k);
    }
    std::ifstream in(name);
    if (!in) throw std::invalid_argument("unknown structure or unreadable file: " + name);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return structure_from_json(text);
}

}  // namespace faststructs
