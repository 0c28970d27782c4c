#include "synthmot/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "synthmot/errors.hpp"

namespace synthmot::complexity {

namespace {

int64_t count_dets(const metrics::FrameData& gt) {
    int64_t n = 0;
    for (const auto& frame : gt) n += static_cast<int64_t>(frame.size());
    return n;
}

}  // namespace

double ocom_proxy(const metrics::FrameData& gt) {
    int64_t dets = count_dets(gt);
    if (dets == 0) throw ValidationError("ocom undefined: no objects in ground truth");
    double sum = 0.0;
    for (const auto& frame : gt) {
        for (size_t i = 0; i < frame.size(); ++i) {
            double area = frame[i].box.area();
            double worst = 0.0;
            for (size_t j = 0; j < frame.size(); ++j) {
                if (j == i) continue;
                worst = std::max(worst, intersection_area(frame[i].box, frame[j].box) / area);
            }
            sum += worst;
        }
    }
    return sum / static_cast<double>(dets);
}

double mcom_proxy(const metrics::FrameData& gt) {
    if (count_dets(gt) == 0) throw ValidationError("mcom undefined: no objects in ground truth");
    // id -> box per frame, to find consecutive triples per track
    std::map<int, std::map<size_t, Bbox>> tracks;
    for (size_t f = 0; f < gt.size(); ++f) {
        for (const metrics::Detection& d : gt[f]) tracks[d.id][f] = d.box;
    }
    double sum = 0.0;
    int64_t contributing = 0;
    for (const auto& [id, frames] : tracks) {
        for (const auto& [f, box] : frames) {
            if (f < 2) continue;
            auto prev1 = frames.find(f - 1);
            auto prev2 = frames.find(f - 2);
            if (prev1 == frames.end() || prev2 == frames.end()) continue;
            double cx = box.left + 0.5 * box.width;
            double cy = box.top + 0.5 * box.height;
            double px1 = prev1->second.left + 0.5 * prev1->second.width;
            double py1 = prev1->second.top + 0.5 * prev1->second.height;
            double px2 = prev2->second.left + 0.5 * prev2->second.width;
            double py2 = prev2->second.top + 0.5 * prev2->second.height;
            double dx = cx - (2.0 * px1 - px2);
            double dy = cy - (2.0 * py1 - py2);
            double d = std::hypot(dx, dy) / box.diagonal();
            sum += d / (1.0 + d);
            ++contributing;
        }
    }
    return contributing == 0 ? 0.0 : sum / static_cast<double>(contributing);
}

double combine_motcom(double ocom, double mcom) { return 0.5 * (ocom + mcom); }

ComplexityScores score_gt(const std::string& name, const metrics::FrameData& gt) {
    ComplexityScores s;
    s.name = name;
    s.ocom = ocom_proxy(gt);
    s.mcom = mcom_proxy(gt);
    s.motcom = combine_motcom(s.ocom, s.mcom);
    return s;
}

SplitAssignment split_sequences(std::vector<ScoredSequence> scored) {
    if (scored.size() < 2) {
        throw ValidationError("split requires at least 2 sequences, got " +
                              std::to_string(scored.size()));
    }
    std::set<std::string> names;
    for (const ScoredSequence& s : scored) {
        if (!names.insert(s.name).second) {
            throw ValidationError("duplicate sequence name: " + s.name);
        }
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredSequence& a, const ScoredSequence& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.name < b.name;
    });
    SplitAssignment split;
    for (size_t i = 0; i < scored.size(); ++i) {
        if (i >= 1 && (i - 1) % 5 == 0) {
            split.test.push_back(scored[i].name);
        } else {
            split.train.push_back(scored[i].name);
        }
    }
    return split;
}

std::string scores_to_csv(const std::vector<ComplexityScores>& scores) {
    std::ostringstream os;
    os << "name,ocom,mcom,motcom\n";
    char buf[64];
    for (const ComplexityScores& s : scores) {
        std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%.6f", s.ocom, s.mcom, s.motcom);
        os << s.name << buf << '\n';
    }
    return os.str();
}

std::vector<ScoredSequence> parse_scores_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scores file: " + path);
    std::vector<ScoredSequence> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 2 && fields.size() != 4) {
            throw ValidationError(path + ": expected 2 or 4 comma-separated fields at line " +
                                  std::to_string(line_no) + ", got " +
                                  std::to_string(fields.size()));
        }
        ScoredSequence s;
        s.name = fields[0];
        try {
            s.score = std::stod(fields.back());
        } catch (const std::exception&) {
            if (line_no == 1) continue;  // header line
            throw ValidationError(path + ": bad score at line " + std::to_string(line_no) + ": " +
                                  fields.back());
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace synthmot::complexity
