#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "faststructs/op_counter.hpp"
#include "faststructs/scalar.hpp"

namespace faststructs {

// Dense row-major integer matrix; entries of the shipped structures are all
// in {-1, 0, 1} but any integers are admitted.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> m);

    std::int64_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::int64_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

// An L-by-L fast linear convolution s = post * ((pre_h*h) o (pre_x*x)),
// where o is the pointwise product: M multiplications for 2L-1 outputs.
struct BilinearAlgorithm {
    int input_len = 0;   // L
    int mult_count = 0;  // M
    int output_len = 0;  // K = 2L-1
    IntMatrix pre_h;     // M x L
    IntMatrix pre_x;     // M x L
    IntMatrix post;      // K x M
};

// Degenerate L=1 algorithm: one multiplication, identity wiring.
BilinearAlgorithm trivial1();

// The 3-multiplication 2-by-2 algorithm (pre = P2, post = Q2).
BilinearAlgorithm karatsuba2();

// k-fold self-iteration of karatsuba2: L = 2^k, M = 3^k.
BilinearAlgorithm iterated_karatsuba(int k);

// Nests inner inside outer: L = L_out*L_in, M = M_out*M_in. The pre matrices
// are Kronecker products (outer index major); the post matrix overlap-adds
// the outer blocks' inner outputs at offsets of L_in.
BilinearAlgorithm iterate(const BilinearAlgorithm& outer, const BilinearAlgorithm& inner);

// Exhaustively checks sum_m post[k][m]*pre_h[m][i]*pre_x[m][j] == [i+j==k]
// over all (i, j, k). Returns false (never throws) on a well-formed but
// incorrect algorithm.
bool validate(const BilinearAlgorithm& alg);

// Applies a {-1,0,1}-entry matrix row-by-row; only adds/subtracts are
// counted. An entry of magnitude > 1 costs one counted multiplication per
// use.
std::vector<Scalar> apply_matrix(OpCounter& ctx, const IntMatrix& m, std::span<const Scalar> v);

// s = post * ((pre_h*h) o (pre_x*x)); exactly M counted multiplications for
// the shipped {-1,0,1} structures.
std::vector<Scalar> apply_convolution(OpCounter& ctx, const BilinearAlgorithm& alg,
                                      std::span<const Scalar> h, std::span<const Scalar> x);

// Schoolbook linear convolution, the baseline oracle; counts |h|*|x|
// multiplications.
std::vector<Scalar> direct_convolution(OpCounter& ctx, std::span<const Scalar> h,
                                       std::span<const Scalar> x);

// JSON document {"L":..,"M":..,"pre_h":..,"pre_x":..,"post":..}.
std::string structure_to_json(const BilinearAlgorithm& alg);
BilinearAlgorithm structure_from_json(const std::string& text);

// Resolves "karatsuba2", "iter:k", or a JSON file path.
BilinearAlgorithm resolve_structure(const std::string& name);

}  // namespace faststructs
