#pragma once

#include <string>
#include <vector>

namespace fixtures {

struct Knot {
  std::string name;
  std::string pd;
  /// Frozen from naive::jones (tests/naive_oracle.hpp).
  std::string jones;
  int terms;
};

inline const std::string kUnknot = "";
inline const std::string kPositiveKink = "X[1,1,2,2]";
inline const std::string kNegativeKink = "X[1,2,2,1]";
inline const std::string kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline const std::string kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
inline const std::string kConway = "X[3,1,4,22] X[1,7,2,6] X[7,3,8,2] X[11,4,12,5] X[5,12,6,13] X[8,16,9,15] "
                                   "X[20,9,21,10] X[10,17,11,18] X[18,13,19,14] X[14,19,15,20] X[16,22,17,21]";
inline const std::string kKinoshitaTerasaka =
    "X[3,1,4,22] X[1,7,2,6] X[7,3,8,2] X[11,4,12,5] X[5,12,6,13] X[8,17,9,18] X[14,9,15,10] X[10,20,11,19] "
    "X[18,14,19,13] X[20,15,21,16] X[16,21,17,22]";
inline const std::string kConwayJones =
    "t^-6 - 2t^-5 + 2t^-4 - 2t^-3 + t^-2 + 2t - 2t^2 + 2t^3 - t^4";

/// Three arcs, three crossings, but two components: looks like a trefoil
/// code and must be rejected.
inline const std::string kTwoComponentLookalike = "X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]";

inline const std::vector<Knot> &knots() {
  static const std::vector<Knot> all = {
      {"unknot", kUnknot, "1", 1},
      {"positive kink", kPositiveKink, "1", 1},
      {"negative kink", kNegativeKink, "1", 1},
      {"trefoil", kTrefoil, "-t^-4 + t^-3 + t^-1", 3},
      {"figure-eight", kFigureEight, "t^-2 - t^-1 + 1 - t + t^2", 5},
      {"trefoil (table labels)", "X[6,3,1,4] X[4,1,5,2] X[2,5,3,6]", "-t^-4 + t^-3 + t^-1", 3},
      {"figure-eight (table labels)", "X[8,5,1,6] X[4,1,5,2] X[2,8,3,7] X[6,4,7,3]", "t^-2 - t^-1 + 1 - t + t^2", 5},
      {"5_1", "X[10,5,1,6] X[6,1,7,2] X[2,7,3,8] X[8,3,9,4] X[4,9,5,10]", "-t^-7 + t^-6 - t^-5 + t^-4 + t^-2", 5},
      {"5_2", "X[5,1,6,10] X[1,7,2,6] X[9,3,10,2] X[3,9,4,8] X[7,5,8,4]", "t - t^2 + 2t^3 - t^4 + t^5 - t^6", 6},
      {"6_1", "X[7,12,8,1] X[1,6,2,7] X[11,3,12,2] X[3,11,4,10] X[9,5,10,4] X[5,9,6,8]",
       "t^-2 - t^-1 + 2 - 2t + t^2 - t^3 + t^4", 7},
      {"6_2", "X[12,8,1,7] X[8,2,9,1] X[2,10,3,9] X[6,4,7,3] X[4,11,5,12] X[10,5,11,6]",
       "t^-1 - 1 + 2t - 2t^2 + 2t^3 - 2t^4 + t^5", 7},
      {"6_3", "X[9,12,10,1] X[1,5,2,4] X[7,3,8,2] X[3,9,4,8] X[5,10,6,11] X[11,6,12,7]",
       "-t^-3 + 2t^-2 - 2t^-1 + 3 - 2t + 2t^2 - t^3", 7},
      {"7_4", "X[14,8,1,7] X[6,2,7,1] X[2,12,3,11] X[10,4,11,3] X[4,10,5,9] X[12,6,13,5] X[8,14,9,13]",
       "t - 2t^2 + 3t^3 - 2t^4 + 3t^5 - 2t^6 + t^7 - t^8", 8},
      {"8_19", "X[16,6,1,5] X[6,2,7,1] X[11,3,12,2] X[3,15,4,14] X[4,10,5,9] X[12,8,13,7] X[8,14,9,13] X[15,11,16,10]",
       "t^3 + t^5 - t^8", 3},
      {"10_132",
       "X[20,13,1,14] X[14,1,15,2] X[7,3,8,2] X[3,18,4,19] X[4,10,5,9] X[16,5,17,6] X[11,7,12,6] X[8,19,9,20] "
       "X[17,10,18,11] X[12,15,13,16]",
       "-t^-7 + t^-6 - t^-5 + t^-4 + t^-2", 5},
      {"Conway", kConway, kConwayJones, 9},
      {"Kinoshita-Terasaka", kKinoshitaTerasaka, kConwayJones, 9},
  };
  return all;
}

} // namespace fixtures
