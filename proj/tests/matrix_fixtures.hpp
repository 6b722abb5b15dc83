#pragma once

// Published transition matrices, row = target state, column = source state.

#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cmccp/rational.hpp"

namespace fixtures {

struct MatrixFixture {
    const char* name;
    int players;
    int labels;
    int lot;
    std::vector<std::string> rows;
};

inline std::vector<MatrixFixture> published_matrices() {
    return {
        {"P=1 M=3 L=1", 1, 3, 1, {"0 0 0", "1 1/3 0", "0 2/3 2/3"}},
        {"P=1 M=3 L=2", 1, 3, 2, {"0 0 0", "0 0 0", "1 2/3 1/3"}},
        {"P=2 M=3 L=1",
         2,
         3,
         1,
         {
             "0 0 0 0 0 0 0 0 0",
             "1 0 0 0 0 0 0 0 0",
             "0 1/3 1/3 0 0 0 0 0 0",
             "0 2/3 0 0 0 0 0 0 0",
             "0 0 2/3 2/3 1/3 0 0 0 0",
             "0 0 0 0 1/3 2/3 0 0 0",
             "0 0 0 1/3 0 0 0 0 0",
             "0 0 0 0 1/3 0 1 1/3 0",
             "0 0 0 0 0 1/3 0 2/3 2/3",
         }},
        {"P=2 M=3 L=2",
         2,
         3,
         2,
         {
             "0 0 0 0 0 0 0 0 0",
             "0 0 0 0 0 0 0 0 0",
             "0 0 0 0 0 0 0 0 0",
             "1 0 0 0 0 0 0 0 0",
             "0 2/3 2/3 0 0 0 0 0 0",
             "0 0 0 1/3 1/3 1/3 0 0 0",
             "0 1/3 0 0 0 0 0 0 0",
             "0 0 1/3 2/3 1/3 0 0 0 0",
             "0 0 0 0 1/3 2/3 1 2/3 1/3",
         }},
    };
}

inline cmccp::Rational parse_fraction(const std::string& token) {
    const auto slash = token.find('/');
    if (slash == std::string::npos) return cmccp::Rational(cmccp::Count(token));
    return cmccp::Rational(cmccp::Count(token.substr(0, slash)), cmccp::Count(token.substr(slash + 1)));
}

inline Eigen::Matrix<cmccp::Rational, Eigen::Dynamic, Eigen::Dynamic> parse(const std::vector<std::string>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::Matrix<cmccp::Rational, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        std::istringstream is(rows[static_cast<std::size_t>(r)]);
        std::string token;
        for (Eigen::Index c = 0; c < n; ++c) {
            is >> token;
            out(r, c) = parse_fraction(token);
        }
    }
    return out;
}

}  // namespace fixtures
