#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmzv {

/// A (possibly empty) tuple of positive integers.  "Admissible" means
/// non-empty with last part >= 2.  Text form: comma-separated parts
/// ("2,1,3"), empty string for the empty index.
class Index {
public:
    Index() = default;
    explicit Index(std::vector<int> parts);
    static Index parse(std::string_view text);

    bool empty() const { return parts_.empty(); }
    int depth() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    bool admissible() const { return !parts_.empty() && parts_.back() >= 2; }
    int last() const { return parts_.back(); }

    const std::vector<int>& parts() const { return parts_; }
    std::string str() const;

    friend bool operator==(const Index&, const Index&) = default;
    friend auto operator<=>(const Index& a, const Index& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
};

/// Shape parameters of a BBBL-type index
///   ({2}^{n_0}, 1, {2}^{n_1}, 3, ..., 1, {2}^{n_{2d-1}}, 3, {2}^{n_{2d}});
/// runs holds n_0..n_{2d} (2d+1 entries).
struct BbblShape {
    int d = 0;
    std::vector<int> runs;

    friend bool operator==(const BbblShape&, const BbblShape&) = default;
};

enum class Arrow { Right, Up };

/// Dual index via the block decomposition
/// ({1}^{a_1-1}, b_1+1, ..., {1}^{a_s-1}, b_s+1) |->
/// ({1}^{b_s-1}, a_s+1, ..., {1}^{b_1-1}, a_1+1).
/// Throws NotAdmissible.
Index dual(const Index& k);

/// Matches k against the BBBL pattern; the decomposition is unique when it
/// exists.  The empty index matches degenerately (d = 0, n_0 = 0).
std::optional<BbblShape> is_bbbl(const Index& k);

/// Emits the index displayed by a shape; inverse of is_bbbl.
Index bbbl_build(const BbblShape& s);

/// Right appends a part 1; Up increments the last part (UpOnEmpty on the
/// empty index).  Arrows apply left to right.
Index apply_arrows(const Index& k, std::span<const Arrow> path);

/// Index <-> word correspondence (k_1,...,k_r) <-> y x^{k_1-1} ... y x^{k_r-1}.
/// from_word throws MalformedWord unless the word is empty or starts with y.
std::string to_word(const Index& k);
Index from_word(std::string_view w);

/// The arrow path that rebuilds an admissible k from (1): the letters of
/// to_word(k) after the leading y, with y |-> Right and x |-> Up.
std::vector<Arrow> arrow_path_from_one(const Index& k);

std::string arrows_str(std::span<const Arrow> path);

/// All admissible indices of the exact weight, in lexicographic part order.
std::vector<Index> admissible_of_weight(int weight);

/// All admissible indices of weight 2..max_weight (2^{w-2} per weight w).
std::vector<Index> admissible_up_to_weight(int max_weight);

}  // namespace qmzv
