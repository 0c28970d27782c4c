#pragma once

#include <map>
#include <string>
#include <vector>

#include "synthmot/bbox.hpp"

namespace synthmot::annot {

/// One ground-truth row. Field order on disk:
/// frame,id,left,top,width,height,confidence,class,visibility
/// Confidence and visibility are always 1 in ground truth; class is 1-6.
struct AnnotationRecord {
    int frame = 1;  // 1-based
    int id = 1;
    int left = 0;
    int top = 0;
    int width = 1;
    int height = 1;
    int confidence = 1;
    int class_id = 1;
    int visibility = 1;

    bool operator==(const AnnotationRecord& o) const {
        return frame == o.frame && id == o.id && left == o.left && top == o.top &&
               width == o.width && height == o.height && confidence == o.confidence &&
               class_id == o.class_id && visibility == o.visibility;
    }
};

/// A parsed tracker-results row; box coordinates stay fractional.
struct ResultRecord {
    int frame = 1;
    int id = 1;
    Bbox box;
    double confidence = 1.0;
};

/// Issues annotation ids frame by frame. An object keeps its id while it
/// stays visible in consecutive frames; any gap means a fresh id on
/// reappearance. Ids increase in first-appearance order and are never
/// reused.
class TrackLedger {
public:
    /// Processes the next frame (must be last_frame + 1, starting at 1) and
    /// returns the annotation id per visible simulation id. `visible_ids`
    /// may arrive in any order.
    std::map<int, int> assign_ids(int frame, const std::vector<int>& visible_ids);

    int next_id() const { return next_id_; }

private:
    int next_id_ = 1;
    int last_frame_ = 0;
    std::map<int, int> active_;  // sim id -> annotation id, visible last frame
};

/// Writes records as the comma-separated 9-field format, sorted by
/// (frame, id), LF line endings, no header. Byte-identical for equal input.
/// Validates class range and positive extents.
void write_gt_file(const std::vector<AnnotationRecord>& records, const std::string& path);

/// Strict 9-field parser. Tolerates surrounding whitespace and
/// float-formatted values (rounded half-up); errors carry the line number.
std::vector<AnnotationRecord> parse_gt_file(const std::string& path);

/// MOTChallenge results reader: 6 to 10 comma-separated fields per line;
/// confidence defaults to 1 when the 7th field is absent; trailing
/// convention fields are ignored. An empty file is an empty result.
std::vector<ResultRecord> parse_results_file(const std::string& path);

/// Sidecar metadata for one sequence directory.
struct SequenceMeta {
    std::string name;
    int frame_count = 0;
    double fps = 15.0;
    int image_width = 0;
    int image_height = 0;
};

/// Writes the seqinfo.ini sidecar ([Sequence] section with name, imDir,
/// frameRate, seqLength, imWidth, imHeight).
void write_seqinfo(const SequenceMeta& meta, const std::string& path);

/// Reads it back; missing keys raise ValidationError.
SequenceMeta parse_seqinfo(const std::string& path);

/// Round half up to the nearest integer; the single rounding rule used for
/// every pixel field written to disk.
int round_px(double v);

}  // namespace synthmot::annot
