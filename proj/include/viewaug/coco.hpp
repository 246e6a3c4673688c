#pragma once

#include "viewaug/point_cloud.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace viewaug {

struct CocoImage {
  long long id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

struct CocoAnnotation {
  long long id = 0;
  long long image_id = 0;
  int category_id = 0;
  // COCO bbox convention: top-left corner plus size.
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct CocoCategory {
  int id = 0;
  std::string name;
};

struct Dataset {
  std::vector<CocoImage> images;
  std::vector<CocoAnnotation> annotations;
  std::vector<CocoCategory> categories;
  std::filesystem::path image_root;

  const CocoImage* find_image(long long id) const;
  // Corner-form boxes of one image, indexed 0..n-1 in annotation order.
  std::vector<BoundingBox> boxes_for(long long image_id) const;
};

struct LoadOptions {
  bool verify_image_files = true;
};

// Parses a COCO-format annotation file. Malformed JSON, annotations that
// reference unknown images, negative bbox sizes, and (optionally) missing
// image files raise LoadError naming the offending record.
Dataset load_dataset(const std::filesystem::path& annotation_file,
                     const std::filesystem::path& image_root,
                     const LoadOptions& options = {});

}  // namespace viewaug
