#pragma once

#include <utility>

#include "faststructs/op_counter.hpp"

namespace faststructs {

// The one 3-product structure every 2-parallel fast path in this library
// instantiates:
//
//   u  = h0 o x0
//   v  = h1 o x1
//   w  = (h0 + h1) o (x0 + x1)
//   p0 = u + wrap(v)
//   p1 = w - u - v
//
// What varies per domain is the element type, the product o, and the wrap
// element standing in for the block filter's delay: a one-block delay for
// FIR streams, multiplication by x^2 (negacyclic shift) in Z_q[x]/(x^n+1),
// and pointwise multiplication by the transform of {0,1,0,...,0} in the
// DFT and NTT domains.
//
// Ops must provide:
//   using Value = ...;
//   Value mul(OpCounter&, const Value&, const Value&);
//   Value add(OpCounter&, const Value&, const Value&);
//   Value sub(OpCounter&, const Value&, const Value&);
//   Value wrap(OpCounter&, const Value&);
template <class Ops>
struct Fast2Result {
    typename Ops::Value p0;
    typename Ops::Value p1;
    typename Ops::Value prod_even;  // h0 o x0
    typename Ops::Value prod_odd;   // h1 o x1
    typename Ops::Value prod_sum;   // (h0+h1) o (x0+x1)
};

template <class Ops>
Fast2Result<Ops> fast2_apply(OpCounter& ctx, Ops& ops, const typename Ops::Value& h0,
                             const typename Ops::Value& h1, const typename Ops::Value& x0,
                             const typename Ops::Value& x1) {
    auto u = ops.mul(ctx, h0, x0);
    auto v = ops.mul(ctx, h1, x1);
    auto w = ops.mul(ctx, ops.add(ctx, h0, h1), ops.add(ctx, x0, x1));
    auto p0 = ops.add(ctx, u, ops.wrap(ctx, v));
    auto p1 = ops.sub(ctx, ops.sub(ctx, w, u), v);
    return {std::move(p0), std::move(p1), std::move(u), std::move(v), std::move(w)};
}

}  // namespace faststructs
