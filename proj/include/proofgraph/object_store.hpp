#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "proofgraph/object_id.hpp"

namespace proofgraph {

struct StorageStats {
  std::uint64_t object_count = 0;
  std::uint64_t total_bytes = 0;
  std::map<std::string, std::uint64_t> objects_by_kind;
};

/// Temp-file-then-rename write, shared by the store and the CLI stage.
void write_file_atomic(const std::filesystem::path& path, const Bytes& bytes);

/// Content-addressed object store over one directory:
///   objects/<first-2-hex>/<remaining-62-hex>   canonical object bytes
///   refs/<name>                                one 64-hex commit id + '\n'
/// All files are written via temp-file-then-rename, so readers never see a
/// partial object and a failed operation leaves at worst orphan objects.
class ObjectStore {
 public:
  static ObjectStore init(const std::filesystem::path& dir);
  static ObjectStore open(const std::filesystem::path& dir);

  /// Stores canonical bytes under their hash. Objects already present are
  /// not re-stored. Returns the id.
  ObjectId put(const Bytes& bytes);

  bool contains(const ObjectId& id) const;

  /// Reads and re-verifies: hash(bytes) must equal the key.
  Bytes get(const ObjectId& id) const;

  /// Every object id present (by filename); malformed names throw.
  std::vector<ObjectId> list_objects() const;

  StorageStats stats() const;

  void write_ref(const std::string& name, const ObjectId& id);
  std::optional<ObjectId> read_ref(const std::string& name) const;

  const std::filesystem::path& root() const { return root_; }

  static bool exists_at(const std::filesystem::path& dir);

 private:
  explicit ObjectStore(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path object_path(const ObjectId& id) const;

  std::filesystem::path root_;
};

}  // namespace proofgraph
