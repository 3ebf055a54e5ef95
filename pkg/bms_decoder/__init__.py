default_app_config = 'bms_decoder.apps.BmsDecoderConfig'
