#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace faststructs {

struct OpDelta {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;

    bool operator==(const OpDelta&) const = default;
};

// Per-context multiplication/addition counter. Counters are never global;
// each computation owns its context. A subtraction counts as one add, a
// sign inversion counts as nothing.
//
// Scoped regions attribute operations to a label: an op is attributed to
// the innermost open scope, so distinct labels stay disjoint and sum
// (together with unlabeled ops) to the context total. The delta returned
// when a scope closes is inclusive of nested scopes.
class OpCounter {
public:
    explicit OpCounter(std::string label = "") : label_(std::move(label)) {}

    OpCounter(const OpCounter&) = delete;
    OpCounter& operator=(const OpCounter&) = delete;

    void count_mul(std::uint64_t k = 1) {
        mults_ += k;
        if (!frames_.empty()) frames_.back().own.mults += k;
    }
    void count_add(std::uint64_t k = 1) {
        adds_ += k;
        if (!frames_.empty()) frames_.back().own.adds += k;
    }

    std::uint64_t mults() const { return mults_; }
    std::uint64_t adds() const { return adds_; }
    OpDelta total() const { return {mults_, adds_}; }
    const std::string& label() const { return label_; }

    void reset() {
        if (!frames_.empty()) throw std::logic_error("OpCounter::reset inside an open scope");
        mults_ = 0;
        adds_ = 0;
        by_label_.clear();
    }

    // Total ops attributed to a region label (exclusive attribution).
    OpDelta label_total(std::string_view label) const {
        auto it = by_label_.find(std::string(label));
        return it == by_label_.end() ? OpDelta{} : it->second;
    }

    class Scope;

    // Runs body inside a labeled region and returns the inclusive op delta,
    // paired with the body's result when it has one.
    template <class F>
    auto scoped(std::string_view label, F&& body) {
        Scope scope(*this, label);
        if constexpr (std::is_void_v<std::invoke_result_t<F&&>>) {
            std::forward<F>(body)();
            return scope.close();
        } else {
            auto result = std::forward<F>(body)();
            return std::pair{std::move(result), scope.close()};
        }
    }

    class Scope {
    public:
        Scope(OpCounter& ctx, std::string_view label)
            : ctx_(ctx), label_(label), start_{ctx.mults_, ctx.adds_} {
            ctx_.frames_.push_back({});
        }
        ~Scope() {
            if (open_) close();
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

        OpDelta close() {
            if (!open_) return delta_;
            open_ = false;
            const Frame frame = ctx_.frames_.back();
            ctx_.frames_.pop_back();
            OpDelta& slot = ctx_.by_label_[label_];
            slot.mults += frame.own.mults;
            slot.adds += frame.own.adds;
            delta_ = {ctx_.mults_ - start_.mults, ctx_.adds_ - start_.adds};
            return delta_;
        }

    private:
        OpCounter& ctx_;
        std::string label_;
        OpDelta start_;
        OpDelta delta_;
        bool open_ = true;
    };

private:
    friend class Scope;

    struct Frame {
        OpDelta own;  // ops not claimed by a nested scope
    };

    std::uint64_t mults_ = 0;
    std::uint64_t adds_ = 0;
    std::string label_;
    std::vector<Frame> frames_;
    std::map<std::string, OpDelta> by_label_;
};

}  // namespace faststructs
