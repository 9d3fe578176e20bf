#pragma once

#include "teamdim/family.hpp"
#include "teamdim/tensor.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace teamdim::kripke {

// R ⊆ P(Y) × P(X)^n, given by a predicate and optionally by explicit rows.
class Relation {
public:
    using Predicate = std::function<bool(const Subset& out, const std::vector<Subset>& args)>;
    // all outputs related to a fixed argument tuple; optional fast path for apply()
    using Image = std::function<std::vector<Subset>(const std::vector<Subset>& args)>;

    struct Row {
        Subset out;
        std::vector<Subset> args;
    };

    Relation(std::string name, std::size_t arity, std::size_t source, std::size_t target, Predicate pred,
             Image image = {});
    static Relation from_rows(std::string name, std::size_t arity, std::size_t source, std::size_t target,
                              std::vector<Row> rows);

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    std::size_t source() const { return source_; }  // |X|
    std::size_t target() const { return target_; }  // |Y|

    bool contains(const Subset& out, const std::vector<Subset>& args) const;
    bool has_rows() const { return rows_ != nullptr; }
    const std::vector<Row>& rows() const;
    const Image& image() const { return image_; }

private:
    std::string name_;
    std::size_t arity_, source_, target_;
    Predicate pred_;
    Image image_;
    std::shared_ptr<const std::vector<Row>> rows_;
};

// explicit extension; requires 2^|Y| * 2^(|X| n) <= 2^24
Relation materialize(const Relation& r);

Family apply(const Relation& r, const std::vector<Family>& args);

bool is_local(const Relation& r);
bool is_separating(const Relation& r);
// parts[i] is a list of families whose union is the i-th argument
bool check_union_law(const Relation& r, const std::vector<std::vector<Family>>& parts);
bool check_star_sharp(const Relation& r);
bool check_star_flat(const Relation& r);

// catalog
Relation intersection(std::size_t base);
Relation tensor_relation(tensor::BoolOp2 op, std::size_t base);
Relation negation(std::size_t base);
Relation restricted_union(std::size_t base);
// f maps source element i to f[i] < target; must be onto
Relation projection(const std::vector<std::size_t>& f, std::size_t target);
Relation inverse_projection(const std::vector<std::size_t>& f, std::size_t target);
// {(Y,X) | Y nonempty} on a two-element base, plus the row (∅,∅)
Relation local_nonseparating_witness();

// singleton rows drawn at random, closed under the locality rule
Relation random_local(std::mt19937_64& rng, std::size_t arity, std::size_t source, std::size_t target,
                      std::size_t max_tuples_per_singleton, bool separating);

// text format: header `kripke n |X| |Y|`, rows `B ; A0 ; A1 ...`
Relation parse_extension(const std::string& text, const std::string& name = "file");
std::string format_extension(const Relation& r);

}  // namespace teamdim::kripke
