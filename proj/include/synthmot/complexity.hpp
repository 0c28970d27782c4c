#pragma once

#include <string>
#include <vector>

#include "synthmot/metrics.hpp"

namespace synthmot::complexity {

struct ComplexityScores {
    std::string name;
    double ocom = 0.0;
    double mcom = 0.0;
    double motcom = 0.0;
};

/// Occlusion proxy: mean over all object-frames of the largest fraction of
/// that object's box covered by any other object's box (intersection over
/// area). 0 when no frame holds two objects. Throws on empty GT.
double ocom_proxy(const metrics::FrameData& gt);

/// Motion proxy: for every track observation with the two previous
/// consecutive frames present, the center's deviation from its
/// constant-velocity prediction, normalized by the box diagonal and squashed
/// by d/(1+d); mean over all contributing observations (0 when there are
/// none). Throws on empty GT.
double mcom_proxy(const metrics::FrameData& gt);

/// Arithmetic mean of the available sub-metrics.
double combine_motcom(double ocom, double mcom);

ComplexityScores score_gt(const std::string& name, const metrics::FrameData& gt);

struct ScoredSequence {
    std::string name;
    double score = 0.0;
};

struct SplitAssignment {
    std::vector<std::string> train;
    std::vector<std::string> test;
};

/// Sorted every-fifth scheme: order by score descending (ties by ascending
/// name); the highest goes to train, the second highest to test, then every
/// fifth after it (sorted indices 1, 6, 11, ...) to test, the rest to train.
/// Requires at least 2 sequences and distinct names.
SplitAssignment split_sequences(std::vector<ScoredSequence> scored);

/// name,ocom,mcom,motcom with a header line.
std::string scores_to_csv(const std::vector<ComplexityScores>& scores);

/// Reads scores back for splitting: either the 4-column scores CSV (the
/// motcom column is the score) or a 2-column name,score file; one optional
/// header line.
std::vector<ScoredSequence> parse_scores_csv(const std::string& path);

}  // namespace synthmot::complexity
