#include "humansynth/coco.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "humansynth/asset_io.hpp"
#include "humansynth/humanoid.hpp"

namespace humansynth::coco {

using json = nlohmann::json;

RleMask rle_encode(const std::vector<std::uint8_t>& bitmap, int height, int width) {
    if (bitmap.size() != static_cast<std::size_t>(height) * width)
        throw std::invalid_argument("rle_encode: bitmap size mismatch");
    RleMask m;
    m.height = height;
    m.width = width;
    std::uint8_t current = 0;  // runs start with background
    std::uint32_t run = 0;
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y) {
            std::uint8_t v = bitmap[static_cast<std::size_t>(y) * width + x] ? 1 : 0;
            if (v == current) {
                ++run;
            } else {
                m.counts.push_back(run);
                current = v;
                run = 1;
            }
        }
    }
    m.counts.push_back(run);
    return m;
}

std::vector<std::uint8_t> rle_decode(const RleMask& mask) {
    std::uint64_t total = 0;
    for (std::uint32_t c : mask.counts) total += c;
    if (total != static_cast<std::uint64_t>(mask.height) * mask.width)
        throw std::invalid_argument("rle_decode: counts do not sum to h*w");
    std::vector<std::uint8_t> bitmap(static_cast<std::size_t>(mask.height) * mask.width, 0);
    std::uint64_t pos = 0;
    std::uint8_t value = 0;
    for (std::uint32_t c : mask.counts) {
        if (value) {
            for (std::uint32_t k = 0; k < c; ++k) {
                std::uint64_t p = pos + k;
                int x = static_cast<int>(p / mask.height);
                int y = static_cast<int>(p % mask.height);
                bitmap[static_cast<std::size_t>(y) * mask.width + x] = 1;
            }
        }
        pos += c;
        value ^= 1;
    }
    return bitmap;
}

std::uint64_t rle_area(const RleMask& mask) {
    std::uint64_t area = 0;
    for (std::size_t i = 1; i < mask.counts.size(); i += 2) area += mask.counts[i];
    return area;
}

std::optional<BBox> rle_bbox(const RleMask& mask) {
    int minx = mask.width, maxx = -1, miny = mask.height, maxy = -1;
    std::uint64_t pos = 0;
    std::uint8_t value = 0;
    for (std::uint32_t c : mask.counts) {
        if (value && c > 0) {
            std::uint64_t first = pos, last = pos + c - 1;
            int x0 = static_cast<int>(first / mask.height);
            int x1 = static_cast<int>(last / mask.height);
            minx = std::min(minx, x0);
            maxx = std::max(maxx, x1);
            if (x0 == x1) {
                miny = std::min(miny, static_cast<int>(first % mask.height));
                maxy = std::max(maxy, static_cast<int>(last % mask.height));
            } else {
                // run spans whole columns in between
                miny = std::min(miny, static_cast<int>(first % mask.height));
                maxy = std::max(maxy, mask.height - 1);
                miny = std::min(miny, 0);
                maxy = std::max(maxy, static_cast<int>(last % mask.height));
            }
        }
        pos += c;
        value ^= 1;
    }
    if (maxx < 0) return std::nullopt;
    return BBox{static_cast<double>(minx), static_cast<double>(miny),
                static_cast<double>(maxx - minx + 1), static_cast<double>(maxy - miny + 1)};
}

std::vector<CocoCategory> default_categories() {
    CocoCategory person;
    person.id = 1;
    person.name = "person";
    person.supercategory = "person";
    person.keypoints = human::coco_keypoint_names();
    person.skeleton = human::coco_skeleton_edges();
    CocoCategory occluder;
    occluder.id = 2;
    occluder.name = "occluder";
    occluder.supercategory = "object";
    return {person, occluder};
}

namespace {

/// Shortest decimal capped at 6 fractional digits; byte-stable.
std::string fmt_number(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("write_coco: non-finite number");
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string write_coco(const CocoDataset& ds) {
    std::unordered_set<std::int64_t> image_ids;
    for (const CocoImage& im : ds.images) image_ids.insert(im.id);
    for (const CocoAnnotation& a : ds.annotations) {
        if (!image_ids.count(a.image_id))
            throw std::invalid_argument("write_coco: annotation " + std::to_string(a.id) +
                                        " references unknown image_id");
        if (!a.keypoints.empty() && a.keypoints.size() != 51)
            throw std::invalid_argument("write_coco: annotation " + std::to_string(a.id) +
                                        " keypoints length must be 51");
        if (a.iscrowd != 0)
            throw std::invalid_argument("write_coco: iscrowd must be 0");
        if (a.bbox.w < 0 || a.bbox.h < 0)
            throw std::invalid_argument("write_coco: negative bbox extent");
    }

    std::string out;
    out.reserve(4096 + ds.annotations.size() * 512);
    out += "{\"info\":{\"description\":\"" + escape(ds.description) +
           "\",\"version\":\"1.0\"},\"licenses\":[],\"images\":[";
    for (std::size_t i = 0; i < ds.images.size(); ++i) {
        const CocoImage& im = ds.images[i];
        if (i) out += ',';
        out += "{\"id\":" + std::to_string(im.id) +
               ",\"width\":" + std::to_string(im.width) +
               ",\"height\":" + std::to_string(im.height) + ",\"file_name\":\"" +
               escape(im.file_name) + "\"}";
    }
    out += "],\"annotations\":[";
    for (std::size_t i = 0; i < ds.annotations.size(); ++i) {
        const CocoAnnotation& a = ds.annotations[i];
        if (i) out += ',';
        out += "{\"id\":" + std::to_string(a.id) +
               ",\"image_id\":" + std::to_string(a.image_id) +
               ",\"category_id\":" + std::to_string(a.category_id) + ",\"bbox\":[" +
               fmt_number(a.bbox.x) + ',' + fmt_number(a.bbox.y) + ',' +
               fmt_number(a.bbox.w) + ',' + fmt_number(a.bbox.h) + "],\"area\":" +
               fmt_number(a.area) + ",\"iscrowd\":0";
        if (!a.keypoints.empty()) {
            out += ",\"keypoints\":[";
            for (std::size_t k = 0; k < a.keypoints.size(); ++k) {
                if (k) out += ',';
                out += fmt_number(a.keypoints[k]);
            }
            out += "],\"num_keypoints\":" + std::to_string(a.num_keypoints);
        }
        if (a.segmentation) {
            out += ",\"segmentation\":{\"size\":[" + std::to_string(a.segmentation->height) +
                   ',' + std::to_string(a.segmentation->width) + "],\"counts\":[";
            for (std::size_t k = 0; k < a.segmentation->counts.size(); ++k) {
                if (k) out += ',';
                out += std::to_string(a.segmentation->counts[k]);
            }
            out += "]}";
        }
        if (!a.bbox3d.empty()) {
            out += ",\"bbox3d\":[";
            for (std::size_t c = 0; c < a.bbox3d.size(); ++c) {
                if (c) out += ',';
                out += '[';
                for (std::size_t k = 0; k < a.bbox3d[c].size(); ++k) {
                    if (k) out += ',';
                    out += fmt_number(a.bbox3d[c][k]);
                }
                out += ']';
            }
            out += ']';
        }
        out += '}';
    }
    out += "],\"categories\":[";
    for (std::size_t i = 0; i < ds.categories.size(); ++i) {
        const CocoCategory& c = ds.categories[i];
        if (i) out += ',';
        out += "{\"id\":" + std::to_string(c.id) + ",\"name\":\"" + escape(c.name) +
               "\",\"supercategory\":\"" + escape(c.supercategory) + "\"";
        if (!c.keypoints.empty()) {
            out += ",\"keypoints\":[";
            for (std::size_t k = 0; k < c.keypoints.size(); ++k) {
                if (k) out += ',';
                out += '"' + escape(c.keypoints[k]) + '"';
            }
            out += "],\"skeleton\":[";
            for (std::size_t k = 0; k < c.skeleton.size(); ++k) {
                if (k) out += ',';
                out += '[' + std::to_string(c.skeleton[k].first) + ',' +
                       std::to_string(c.skeleton[k].second) + ']';
            }
            out += ']';
        }
        out += '}';
    }
    out += "]}";
    return out;
}

namespace {

std::optional<RleMask> parse_segmentation(const json& seg, std::int64_t ann_id,
                                          int img_h, int img_w, bool convert_polygons) {
    if (seg.is_object() && seg.contains("counts") && seg.contains("size")) {
        if (!seg["counts"].is_array()) return std::nullopt;  // compressed RLE: skip
        RleMask m;
        m.height = seg["size"][0].get<int>();
        m.width = seg["size"][1].get<int>();
        for (const json& c : seg["counts"]) m.counts.push_back(c.get<std::uint32_t>());
        std::uint64_t total = 0;
        for (auto c : m.counts) total += c;
        if (total != static_cast<std::uint64_t>(m.height) * m.width)
            throw std::runtime_error("annotation " + std::to_string(ann_id) +
                                     ": RLE counts do not sum to h*w");
        return m;
    }
    if (seg.is_array() && convert_polygons && img_h > 0 && img_w > 0) {
        // even-odd polygon fill at pixel centers
        std::vector<std::uint8_t> bitmap(static_cast<std::size_t>(img_h) * img_w, 0);
        for (const json& poly : seg) {
            if (!poly.is_array() || poly.size() < 6) continue;
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i + 1 < poly.size(); i += 2) {
                xs.push_back(poly[i].get<double>());
                ys.push_back(poly[i + 1].get<double>());
            }
            std::size_t n = xs.size();
            for (int y = 0; y < img_h; ++y) {
                double py = y + 0.5;
                std::vector<double> crossings;
                for (std::size_t i = 0; i < n; ++i) {
                    std::size_t j = (i + 1) % n;
                    if ((ys[i] <= py) != (ys[j] <= py)) {
                        double t = (py - ys[i]) / (ys[j] - ys[i]);
                        crossings.push_back(xs[i] + t * (xs[j] - xs[i]));
                    }
                }
                std::sort(crossings.begin(), crossings.end());
                for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
                    int x0 = std::max(0, static_cast<int>(std::ceil(crossings[i] - 0.5)));
                    int x1 = std::min(img_w - 1,
                                      static_cast<int>(std::floor(crossings[i + 1] - 0.5)));
                    for (int x = x0; x <= x1; ++x)
                        bitmap[static_cast<std::size_t>(y) * img_w + x] = 1;
                }
            }
        }
        return rle_encode(bitmap, img_h, img_w);
    }
    return std::nullopt;
}

}  // namespace

CocoDataset read_coco(const std::string& json_text, bool convert_polygons) {
    json root = json::parse(json_text);
    CocoDataset ds;
    ds.categories.clear();
    if (root.contains("info") && root["info"].contains("description"))
        ds.description = root["info"]["description"].get<std::string>();
    if (!root.contains("images"))
        throw std::runtime_error("read_coco: missing 'images' at $");
    if (!root.contains("annotations"))
        throw std::runtime_error("read_coco: missing 'annotations' at $");

    std::unordered_set<std::int64_t> image_ids;
    std::vector<std::pair<std::int64_t, std::pair<int, int>>> dims;
    for (const json& ji : root["images"]) {
        CocoImage im;
        if (!ji.contains("id")) throw std::runtime_error("read_coco: image missing 'id'");
        im.id = ji["id"].get<std::int64_t>();
        im.width = ji.value("width", 0);
        im.height = ji.value("height", 0);
        im.file_name = ji.value("file_name", "");
        image_ids.insert(im.id);
        dims.push_back({im.id, {im.height, im.width}});
        ds.images.push_back(std::move(im));
    }
    std::unordered_map<std::int64_t, std::pair<int, int>> dim_map(dims.begin(), dims.end());

    for (const json& ja : root["annotations"]) {
        CocoAnnotation a;
        if (!ja.contains("id"))
            throw std::runtime_error("read_coco: annotation missing 'id'");
        a.id = ja["id"].get<std::int64_t>();
        if (!ja.contains("image_id"))
            throw std::runtime_error("read_coco: annotation " + std::to_string(a.id) +
                                     " missing 'image_id'");
        a.image_id = ja["image_id"].get<std::int64_t>();
        if (!image_ids.count(a.image_id))
            throw std::runtime_error("read_coco: annotation " + std::to_string(a.id) +
                                     " references unknown image_id");
        a.category_id = ja.value("category_id", 1);
        if (ja.contains("bbox")) {
            const json& b = ja["bbox"];
            if (!b.is_array() || b.size() != 4)
                throw std::runtime_error("read_coco: annotation " + std::to_string(a.id) +
                                         " bbox must be [x,y,w,h]");
            a.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                      b[3].get<double>()};
        }
        a.area = ja.value("area", a.bbox.w * a.bbox.h);
        a.iscrowd = ja.value("iscrowd", 0);
        if (ja.contains("keypoints")) {
            for (const json& k : ja["keypoints"]) a.keypoints.push_back(k.get<double>());
            if (a.keypoints.size() != 51)
                throw std::runtime_error("read_coco: annotation " + std::to_string(a.id) +
                                         " keypoints length " +
                                         std::to_string(a.keypoints.size()) + " != 51");
            a.num_keypoints = ja.value("num_keypoints", 0);
        }
        if (ja.contains("bbox3d"))
            for (const json& c : ja["bbox3d"]) {
                std::vector<double> corner;
                for (const json& k : c) corner.push_back(k.get<double>());
                a.bbox3d.push_back(std::move(corner));
            }
        if (ja.contains("segmentation")) {
            auto [h, w] = dim_map[a.image_id];
            a.segmentation =
                parse_segmentation(ja["segmentation"], a.id, h, w, convert_polygons);
        }
        ds.annotations.push_back(std::move(a));
    }
    if (root.contains("categories")) {
        for (const json& jc : root["categories"]) {
            CocoCategory c;
            c.id = jc.value("id", 1);
            c.name = jc.value("name", "");
            c.supercategory = jc.value("supercategory", "");
            if (jc.contains("keypoints"))
                for (const json& k : jc["keypoints"]) c.keypoints.push_back(k.get<std::string>());
            if (jc.contains("skeleton"))
                for (const json& e : jc["skeleton"])
                    c.skeleton.push_back({e[0].get<int>(), e[1].get<int>()});
            ds.categories.push_back(std::move(c));
        }
    }
    return ds;
}

CocoDataset read_coco_file(const std::string& path, bool convert_polygons) {
    return read_coco(io::read_text_file(path), convert_polygons);
}

}  // namespace humansynth::coco
