#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "workcell/scene.hpp"

namespace workcell {

/// Immutable collection of asset descriptions keyed by id.
class AssetLibrary {
 public:
  /// Loads every *.json document in `dir`. Unknown fields are rejected.
  static AssetLibrary load_dir(const std::filesystem::path& dir);

  void add(Asset asset);
  AssetPtr get(const std::string& id) const;  // throws UnknownObject
  bool contains(const std::string& id) const;
  std::size_t size() const { return assets_.size(); }

 private:
  std::map<std::string, AssetPtr> assets_;
};

/// Parses one asset document. Throws SchemaError on unknown or missing fields
/// and InvalidConfig when the asset violates its invariants.
Asset parse_asset_document(const std::string& text, const std::string& origin = "<memory>");

}  // namespace workcell
