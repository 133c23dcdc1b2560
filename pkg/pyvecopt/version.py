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


__version__ = "0.1.0"

__title__ = 'pyvecopt'
__description__ = 'Diagnostics for constrained nonsmooth vector optimization'
__url__ = 'https://github.com/jetperch/pyvecopt'
__author__ = 'Jetperch LLC'
__author_email__ = 'dev@jetperch.com'
__license__ = 'Apache 2.0'
__copyright__ = 'Copyright 2021 Jetperch LLC'
