#include "synthmot/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "synthmot/errors.hpp"
#include "synthmot/fsutil.hpp"

namespace synthmot::annot {

int round_px(double v) { return static_cast<int>(std::floor(v + 0.5)); }

std::map<int, int> TrackLedger::assign_ids(int frame, const std::vector<int>& visible_ids) {
    if (frame != last_frame_ + 1) {
        throw ValidationError("frames must be processed in order: expected frame " +
                              std::to_string(last_frame_ + 1) + ", got " + std::to_string(frame));
    }
    last_frame_ = frame;

    std::vector<int> sorted = visible_ids;
    std::sort(sorted.begin(), sorted.end());

    std::map<int, int> current;
    // Carry over ids first, then hand out fresh ones in ascending sim-id
    // order so first-appearance order is deterministic.
    for (int sim_id : sorted) {
        auto it = active_.find(sim_id);
        if (it != active_.end()) current[sim_id] = it->second;
    }
    for (int sim_id : sorted) {
        if (!current.count(sim_id)) current[sim_id] = next_id_++;
    }
    active_ = current;
    return current;
}

namespace {

void validate_record(const AnnotationRecord& r) {
    if (r.class_id < 1 || r.class_id > 6) {
        throw ValidationError("class must be in 1-6, got " + std::to_string(r.class_id));
    }
    if (r.width <= 0 || r.height <= 0) {
        throw ValidationError("non-positive box extent in record at frame " +
                              std::to_string(r.frame));
    }
    if (r.frame < 1 || r.id < 1) {
        throw ValidationError("frame and id must be >= 1");
    }
}

}  // namespace

void write_gt_file(const std::vector<AnnotationRecord>& records, const std::string& path) {
    std::vector<AnnotationRecord> sorted = records;
    for (const AnnotationRecord& r : sorted) validate_record(r);
    std::sort(sorted.begin(), sorted.end(), [](const AnnotationRecord& a, const AnnotationRecord& b) {
        if (a.frame != b.frame) return a.frame < b.frame;
        return a.id < b.id;
    });

    std::string out;
    out.reserve(sorted.size() * 32);
    char line[128];
    for (const AnnotationRecord& r : sorted) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%d,%d,%d,%d,%d,%d\n", r.frame, r.id, r.left,
                      r.top, r.width, r.height, r.confidence, r.class_id, r.visibility);
        out += line;
    }
    write_file_atomic(path, out);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& raw, int line_no, const char* what) {
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(raw, &pos);
    } catch (...) {
        throw ValidationError(std::string("non-numeric ") + what + " at line " +
                              std::to_string(line_no));
    }
    // Allow trailing whitespace only.
    for (size_t i = pos; i < raw.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(raw[i]))) {
            throw ValidationError(std::string("non-numeric ") + what + " at line " +
                                  std::to_string(line_no));
        }
    }
    return value;
}

int parse_int_field(const std::string& raw, int line_no, const char* what) {
    return round_px(parse_number(raw, line_no, what));
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<AnnotationRecord> parse_gt_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ground-truth file: " + path);

    std::vector<AnnotationRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 9) {
            throw ValidationError("expected 9 fields at line " + std::to_string(line_no) +
                                  ", got " + std::to_string(fields.size()));
        }
        AnnotationRecord r;
        r.frame = parse_int_field(fields[0], line_no, "frame");
        r.id = parse_int_field(fields[1], line_no, "id");
        r.left = parse_int_field(fields[2], line_no, "left");
        r.top = parse_int_field(fields[3], line_no, "top");
        r.width = parse_int_field(fields[4], line_no, "width");
        r.height = parse_int_field(fields[5], line_no, "height");
        r.confidence = parse_int_field(fields[6], line_no, "confidence");
        r.class_id = parse_int_field(fields[7], line_no, "class");
        r.visibility = parse_int_field(fields[8], line_no, "visibility");
        if (r.class_id < 1 || r.class_id > 6) {
            throw ValidationError("class out of range 1-6 at line " + std::to_string(line_no));
        }
        if (r.width <= 0 || r.height <= 0) {
            throw ValidationError("non-positive box extent at line " + std::to_string(line_no));
        }
        records.push_back(r);
    }
    return records;
}

std::vector<ResultRecord> parse_results_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results file: " + path);

    std::vector<ResultRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        std::vector<std::string> fields = split_csv(line);
        if (fields.size() < 6 || fields.size() > 10) {
            throw ValidationError("expected 6-10 fields at line " + std::to_string(line_no) +
                                  ", got " + std::to_string(fields.size()));
        }
        ResultRecord r;
        r.frame = parse_int_field(fields[0], line_no, "frame");
        r.id = parse_int_field(fields[1], line_no, "id");
        r.box.left = parse_number(fields[2], line_no, "left");
        r.box.top = parse_number(fields[3], line_no, "top");
        r.box.width = parse_number(fields[4], line_no, "width");
        r.box.height = parse_number(fields[5], line_no, "height");
        if (fields.size() >= 7) r.confidence = parse_number(fields[6], line_no, "confidence");
        if (r.box.width <= 0.0 || r.box.height <= 0.0) {
            throw ValidationError("non-positive box extent at line " + std::to_string(line_no));
        }
        records.push_back(r);
    }
    return records;
}

void write_seqinfo(const SequenceMeta& meta, const std::string& path) {
    std::ostringstream out;
    out << "[Sequence]\n";
    out << "name=" << meta.name << "\n";
    out << "imDir=img1\n";
    out << "frameRate=" << meta.fps << "\n";
    out << "seqLength=" << meta.frame_count << "\n";
    out << "imWidth=" << meta.image_width << "\n";
    out << "imHeight=" << meta.image_height << "\n";
    write_file_atomic(path, out.str());
}

SequenceMeta parse_seqinfo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open seqinfo file: " + path);
    SequenceMeta meta;
    bool have_len = false, have_w = false, have_h = false;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (!value.empty() && value.back() == '\r') value.pop_back();
        if (key == "name") meta.name = value;
        else if (key == "frameRate") meta.fps = std::stod(value);
        else if (key == "seqLength") { meta.frame_count = std::stoi(value); have_len = true; }
        else if (key == "imWidth") { meta.image_width = std::stoi(value); have_w = true; }
        else if (key == "imHeight") { meta.image_height = std::stoi(value); have_h = true; }
    }
    if (!have_len || !have_w || !have_h) {
        throw ValidationError("seqinfo missing seqLength/imWidth/imHeight: " + path);
    }
    return meta;
}

}  // namespace synthmot::annot
