#include "workcell/assets.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "workcell/errors.hpp"

namespace workcell {

using nlohmann::json;

namespace {

void require_fields(const json& obj, const std::set<std::string>& required,
                    const std::set<std::string>& optional, const std::string& where) {
  if (!obj.is_object()) throw Error(Errc::SchemaError, where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key)) {
      throw Error(Errc::SchemaError, where + ": unknown field '" + key + "'");
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw Error(Errc::SchemaError, where + ": missing field '" + key + "'");
    }
  }
}

Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(Errc::SchemaError, where + ": expected [x, y, z]");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

Asset parse_asset_document(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, origin + ": " + e.what());
  }
  require_fields(doc, {"id", "shape"}, {"annotations"}, origin);

  Asset asset;
  asset.id = doc.at("id").get<std::string>();
  for (const auto& b : doc.at("shape")) {
    require_fields(b, {"center", "half_extents"}, {}, origin + ": shape box");
    asset.shape.push_back(
        {parse_vec3(b.at("center"), origin), parse_vec3(b.at("half_extents"), origin)});
  }
  if (doc.contains("annotations")) {
    for (const auto& a : doc.at("annotations")) {
      require_fields(a, {"label", "point", "directions"}, {"angular_tolerance_deg"},
                     origin + ": annotation");
      InteractionAnnotation ann;
      ann.label = a.at("label").get<std::string>();
      ann.local_point = parse_vec3(a.at("point"), origin);
      for (const auto& d : a.at("directions")) {
        ann.allowed_directions.push_back(parse_vec3(d, origin).normalized());
      }
      if (a.contains("angular_tolerance_deg")) {
        ann.angular_tolerance = a.at("angular_tolerance_deg").get<double>() * 3.14159265358979323846 / 180.0;
      }
      asset.annotations.push_back(std::move(ann));
    }
  }
  asset.validate();
  return asset;
}

AssetLibrary AssetLibrary::load_dir(const std::filesystem::path& dir) {
  AssetLibrary lib;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(Errc::IoError, "asset directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    lib.add(parse_asset_document(text, path.filename().string()));
  }
  return lib;
}

void AssetLibrary::add(Asset asset) {
  asset.validate();
  auto id = asset.id;
  if (assets_.count(id)) throw Error(Errc::InvalidConfig, "duplicate asset id '" + id + "'");
  assets_.emplace(std::move(id), std::make_shared<const Asset>(std::move(asset)));
}

AssetPtr AssetLibrary::get(const std::string& id) const {
  auto it = assets_.find(id);
  if (it == assets_.end()) throw Error(Errc::UnknownObject, "asset '" + id + "'");
  return it->second;
}

bool AssetLibrary::contains(const std::string& id) const { return assets_.count(id) > 0; }

}  // namespace workcell
