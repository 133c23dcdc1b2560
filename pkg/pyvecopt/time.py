# Copyright 2021 Jetperch LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import datetime
import time
import dateutil.parser
import dateutil.tz


def now_str():
    """Get the current UTC time as an ISO 8601 string."""
    return datetime.datetime.now(tz=dateutil.tz.tzutc()).isoformat()


def parse(s):
    """Parse a timestamp produced by :func:`now_str`."""
    return dateutil.parser.isoparse(s)


class Stopwatch:
    """Measure the wall-clock duration of a report."""

    def __init__(self):
        self.started = now_str()
        self._t0 = time.perf_counter()

    def elapsed(self):
        return time.perf_counter() - self._t0

    def to_dict(self):
        return {'started': self.started, 'elapsed_s': self.elapsed()}
