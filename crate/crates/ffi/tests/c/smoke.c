#include <math.h>
#include <stdio.h>
#include "bikegeom.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, bg_last_error() ? bg_last_error() : ""); return 1; } } while (0)

int main(void) {
    BgPolygon *p = NULL;
    CHECK(bg_polygon_regular(8, 1.0, &p) == BG_STATUS_OK);
    BgPolygonReport r;
    CHECK(bg_polygon_verify(p, 3, 1e-9, &r) == BG_STATUS_OK);
    CHECK(r.bicycle && r.convex);
    bg_polygon_free(p);

    double roots[4];
    size_t count = 0;
    CHECK(bg_mode_roots(4, roots, 4, &count) == BG_STATUS_OK);
    CHECK(count == 2 && fabs(roots[0] - atan(sqrt(5.0))) < 1e-13);

    BgFront *f = NULL;
    CHECK(bg_front_from_json("{\"harmonics\": {\"4\": [1, 0]}}", &f) == BG_STATUS_INVALID_INPUT);
    CHECK(f == NULL && bg_last_error() != NULL);

    printf("ok %s\n", bg_version());
    return 0;
}
