#include "qmzv/indices.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "qmzv/errors.hpp"

namespace qmzv {

Index::Index(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int k : parts_)
        if (k < 1) throw Error(Errc::invalid_params, "index parts must be positive");
}

Index Index::parse(std::string_view text) {
    std::vector<int> parts;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1)
            throw Error(Errc::syntax_error, "bad index component '" + std::string(tok) + "'");
        parts.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
        if (pos == text.size())
            throw Error(Errc::syntax_error, "trailing comma in index");
    }
    return Index(std::move(parts));
}

int Index::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Index::str() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

Index dual(const Index& k) {
    if (!k.admissible())
        throw Error(Errc::not_admissible, "dual requires an admissible index, got (" + k.str() + ")");
    // Block decomposition: a run of (a_i - 1) ones followed by b_i + 1.
    std::vector<std::pair<int, int>> blocks;  // (a_i, b_i)
    int ones = 0;
    for (int part : k.parts()) {
        if (part == 1) {
            ++ones;
        } else {
            blocks.emplace_back(ones + 1, part - 1);
            ones = 0;
        }
    }
    std::vector<int> out;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        auto [a, b] = *it;
        out.insert(out.end(), b - 1, 1);
        out.push_back(a + 1);
    }
    return Index(std::move(out));
}

std::optional<BbblShape> is_bbbl(const Index& k) {
    // The subsequence of non-2 entries must be exactly 1,3,1,3,...,1,3.
    BbblShape s;
    s.runs.assign(1, 0);
    bool expect_one = true;  // next non-2 entry must be 1 (else 3)
    for (int part : k.parts()) {
        if (part == 2) {
            ++s.runs.back();
        } else if (part == 1 && expect_one) {
            s.runs.push_back(0);
            expect_one = false;
        } else if (part == 3 && !expect_one) {
            s.runs.push_back(0);
            expect_one = true;
        } else {
            return std::nullopt;
        }
    }
    if (!expect_one) return std::nullopt;  // dangling 1 without its 3
    s.d = static_cast<int>(s.runs.size() / 2);
    return s;
}

Index bbbl_build(const BbblShape& s) {
    if (s.d < 0 || s.runs.size() != static_cast<size_t>(2 * s.d + 1))
        throw Error(Errc::invalid_params, "BbblShape needs 2d+1 run lengths");
    std::vector<int> parts;
    for (int j = 0; j <= 2 * s.d; ++j) {
        if (s.runs[j] < 0) throw Error(Errc::invalid_params, "negative run length");
        if (j > 0) parts.push_back(j % 2 == 1 ? 1 : 3);
        parts.insert(parts.end(), s.runs[j], 2);
    }
    return Index(std::move(parts));
}

Index apply_arrows(const Index& k, std::span<const Arrow> path) {
    std::vector<int> parts = k.parts();
    for (Arrow a : path) {
        switch (a) {
            case Arrow::Right:
                parts.push_back(1);
                break;
            case Arrow::Up:
                if (parts.empty())
                    throw Error(Errc::up_on_empty, "up-arrow on the empty index");
                ++parts.back();
                break;
        }
    }
    return Index(std::move(parts));
}

std::string to_word(const Index& k) {
    std::string w;
    for (int part : k.parts()) {
        w += 'y';
        w.append(static_cast<size_t>(part - 1), 'x');
    }
    return w;
}

Index from_word(std::string_view w) {
    if (!w.empty() && w.front() != 'y')
        throw Error(Errc::malformed_word, "word must start with y: '" + std::string(w) + "'");
    std::vector<int> parts;
    for (char c : w) {
        if (c == 'y')
            parts.push_back(1);
        else if (c == 'x')
            ++parts.back();
        else
            throw Error(Errc::malformed_word, std::string("letter outside {x,y}: '") + c + "'");
    }
    return Index(std::move(parts));
}

std::vector<Arrow> arrow_path_from_one(const Index& k) {
    if (!k.admissible())
        throw Error(Errc::not_admissible, "arrow path requires an admissible index");
    std::string w = to_word(k);
    std::vector<Arrow> path;
    for (size_t i = 1; i < w.size(); ++i)
        path.push_back(w[i] == 'y' ? Arrow::Right : Arrow::Up);
    return path;
}

std::string arrows_str(std::span<const Arrow> path) {
    std::string out;
    for (Arrow a : path) out += (a == Arrow::Right ? 'R' : 'U');
    return out;
}

std::vector<Index> admissible_of_weight(int weight) {
    std::vector<Index> out;
    std::vector<int> parts;
    // Compositions in lexicographic order, last part >= 2.
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining >= 2) {
            parts.push_back(remaining);
            out.emplace_back(parts);
            parts.pop_back();
        }
        for (int first = 1; first <= remaining - 2; ++first) {
            parts.push_back(first);
            self(self, remaining - first);
            parts.pop_back();
        }
    };
    if (weight >= 2) rec(rec, weight);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> admissible_up_to_weight(int max_weight) {
    std::vector<Index> out;
    for (int w = 2; w <= max_weight; ++w) {
        auto batch = admissible_of_weight(w);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

}  // namespace qmzv
