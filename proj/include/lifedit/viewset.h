#ifndef LIFEDIT_VIEWSET_H_
#define LIFEDIT_VIEWSET_H_

// Training-view directories: view_0000.pfm, mask_0000.pfm, ... plus
// cameras.scene, whose [camera] blocks list the poses in index order.

#include <filesystem>
#include <string>

#include "lifedit/inverse.h"

namespace lifedit {

std::string view_file_name(int index);
std::string mask_file_name(int index);

// Throws InputError naming the index for missing or extra images, masks or
// cameras and for size mismatches; FormatError for unreadable files.
ViewSet make_viewset(const std::filesystem::path& dir);

void write_viewset(const std::filesystem::path& dir, const ViewSet& views);

}  // namespace lifedit

#endif  // LIFEDIT_VIEWSET_H_
