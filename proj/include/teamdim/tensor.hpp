#pragma once

#include "teamdim/family.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace teamdim::tensor {

// Binary boolean operation, truth table indexed by 2a+b.
struct BoolOp2 {
    std::uint8_t table = 0;

    bool operator()(bool a, bool b) const { return (table >> (2 * a + b)) & 1u; }
    std::string bits() const;  // "b00b01b10b11"
    std::string name() const;  // alias, or the bit string when there is none

    // accepts an alias ("or", "minus", ...) or a 4-character 0/1 string
    static BoolOp2 parse(const std::string& s);
    static BoolOp2 from_bits(const std::string& b00b01b10b11);
    static std::vector<BoolOp2> all();

    bool commutative() const { return (*this)(0, 1) == (*this)(1, 0); }
    bool associative() const;
    friend bool operator==(BoolOp2, BoolOp2) = default;
};

namespace ops {
inline constexpr BoolOp2 op_or{0b1110};
inline constexpr BoolOp2 op_and{0b1000};
inline constexpr BoolOp2 op_minus{0b0100};  // p and not q
inline constexpr BoolOp2 op_xor{0b0110};
}  // namespace ops

enum class Kleene : std::uint8_t { zero, one, unknown };
char to_char(Kleene k);

struct KleeneChar {
    std::size_t base = 0;
    std::vector<Kleene> values;
    friend bool operator==(const KleeneChar&, const KleeneChar&) = default;
};

Kleene kleene_apply(BoolOp2 op, Kleene u, Kleene v);
KleeneChar char_function(const Family& f);
KleeneChar char_function(const Interval& iv);

Family tensor_apply(BoolOp2 op, const Family& a, const Family& b);
Family tensor_negation(const Family& f);
Interval tensor_interval_apply(BoolOp2 op, const Interval& i, const Interval& j);

// families over disjoint bases laid side by side (first family on the lowest
// indices); members are the unions of one member from each family
Family general_disjunction(const std::vector<Family>& parts);

}  // namespace teamdim::tensor
